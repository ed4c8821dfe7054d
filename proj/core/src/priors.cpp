#include "eslr/priors.hpp"

#include "eslr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace eslr {
namespace {

constexpr double kPi = std::numbers::pi;
// The horseshoe lower bound log(1 + 4/x^2) / (2 sqrt(2 pi^3)) has total mass
// sqrt(2/pi); dividing by it makes the bound a proper density.
const double kLogHorseshoeConst =
    -std::log(2.0) - 0.5 * std::log(2.0 * kPi * kPi * kPi) + 0.5 * std::log(kPi / 2.0);
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * kPi);

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    raise(ErrorKind::InvalidArgument, "lambda must be positive and finite");
  }
}

double log_cauchy(double x) { return -std::log(kPi) - std::log1p(x * x); }

double horseshoe_std(double x) {
  const double ax = std::max(std::abs(x), kHorseshoeClamp);
  return kLogHorseshoeConst + std::log(std::log1p(4.0 / (ax * ax)));
}

double laplace_std(double x) { return -std::log(2.0) - std::abs(x); }

double ridge_std(double x) { return -kLogSqrt2Pi - 0.5 * x * x; }

double sharkfin_std(double x, double q) {
  if (x <= 0.0) return std::log(2.0 * q) + log_cauchy(x);
  const double s = (1.0 - q) / q;
  return std::log(2.0 * (1.0 - q) / s) + log_cauchy(x / s);
}

double nonlocal_std(double x, double lo, double hi, double w) {
  const double a = std::log(w) + log_cauchy(x - lo);
  const double b = std::log1p(-w) + log_cauchy(x - hi);
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double checked(double value, const char* what) {
  if (std::isnan(value)) raise(ErrorKind::EvaluationError, std::string(what) + " returned NaN");
  if (value == std::numeric_limits<double>::infinity()) {
    raise(ErrorKind::EvaluationError, std::string(what) + " returned +inf");
  }
  return value;
}

}  // namespace

std::string_view to_string(PriorFamily family) noexcept {
  switch (family) {
    case PriorFamily::Flat: return "flat";
    case PriorFamily::Horseshoe: return "horseshoe";
    case PriorFamily::Laplace: return "laplace";
    case PriorFamily::Ridge: return "ridge";
    case PriorFamily::SharkFin: return "sharkfin";
    case PriorFamily::NonLocalCauchyMix: return "nonlocal";
    case PriorFamily::UserDefined: return "user";
  }
  return "unknown";
}

PriorFamily parse_prior_family(std::string_view name) {
  for (auto f : {PriorFamily::Flat, PriorFamily::Horseshoe, PriorFamily::Laplace,
                 PriorFamily::Ridge, PriorFamily::SharkFin, PriorFamily::NonLocalCauchyMix}) {
    if (name == to_string(f)) return f;
  }
  raise(ErrorKind::ConfigError, "unknown prior family '" + std::string(name) + "'");
}

CoordinatePrior CoordinatePrior::sharkfin(double q) {
  CoordinatePrior c{PriorFamily::SharkFin};
  c.q = q;
  c.validate();
  return c;
}

CoordinatePrior CoordinatePrior::nonlocal(double location_lo, double location_hi,
                                          double weight_lo) {
  CoordinatePrior c{PriorFamily::NonLocalCauchyMix};
  c.location_lo = location_lo;
  c.location_hi = location_hi;
  c.weight_lo = weight_lo;
  c.validate();
  return c;
}

void CoordinatePrior::validate() const {
  if (family == PriorFamily::SharkFin && !(q > 0.0 && q < 1.0)) {
    raise(ErrorKind::ConfigError, "shark-fin q must lie in (0, 1)");
  }
  if (family == PriorFamily::NonLocalCauchyMix) {
    if (!(weight_lo > 0.0 && weight_lo < 1.0)) {
      raise(ErrorKind::ConfigError, "mixture weights must lie in (0, 1) and sum to one");
    }
    if (!std::isfinite(location_lo) || !std::isfinite(location_hi)) {
      raise(ErrorKind::ConfigError, "mixture locations must be finite");
    }
  }
}

PriorSpec::PriorSpec(std::vector<CoordinatePrior> coordinates, bool sample_lambda,
                     UserLogDensity user)
    : coords_(std::move(coordinates)), sample_lambda_(sample_lambda), user_(std::move(user)) {
  if (coords_.empty()) raise(ErrorKind::ConfigError, "prior needs at least one coordinate");
  bool wants_user = false;
  for (const auto& c : coords_) {
    c.validate();
    wants_user = wants_user || c.family == PriorFamily::UserDefined;
  }
  if (wants_user && !user_) {
    raise(ErrorKind::ConfigError, "UserDefined coordinates need a user log-density");
  }
}

PriorSpec PriorSpec::uniform(Index p, CoordinatePrior prior, bool sample_lambda) {
  return PriorSpec(std::vector<CoordinatePrior>(static_cast<std::size_t>(p), prior),
                   sample_lambda);
}

PriorSpec PriorSpec::user_defined(Index p, UserLogDensity user, bool sample_lambda) {
  return PriorSpec(std::vector<CoordinatePrior>(static_cast<std::size_t>(p),
                                                CoordinatePrior{PriorFamily::UserDefined}),
                   sample_lambda, std::move(user));
}

bool PriorSpec::depends_on_lambda() const noexcept {
  if (user_) return true;
  return std::any_of(coords_.begin(), coords_.end(),
                     [](const CoordinatePrior& c) { return c.family != PriorFamily::Flat; });
}

double log_density(const CoordinatePrior& prior, double beta, double lambda) {
  const double x = beta / lambda;
  const double jac = std::log(lambda);
  switch (prior.family) {
    case PriorFamily::Flat: return 0.0;
    case PriorFamily::Horseshoe: return horseshoe_std(x) - jac;
    case PriorFamily::Laplace: return laplace_std(x) - jac;
    case PriorFamily::Ridge: return ridge_std(x) - jac;
    case PriorFamily::SharkFin: return sharkfin_std(x, prior.q) - jac;
    case PriorFamily::NonLocalCauchyMix:
      return nonlocal_std(x, prior.location_lo, prior.location_hi, prior.weight_lo) - jac;
    case PriorFamily::UserDefined: return 0.0;
  }
  return 0.0;
}

double log_horseshoe(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda) {
  check_lambda(lambda);
  double total = 0.0;
  for (Index j = 0; j < beta.size(); ++j) total += horseshoe_std(beta(j) / lambda);
  return total - static_cast<double>(beta.size()) * std::log(lambda);
}

double log_laplace(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda) {
  check_lambda(lambda);
  return -static_cast<double>(beta.size()) * std::log(2.0 * lambda) -
         beta.cwiseAbs().sum() / lambda;
}

double log_ridge(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda) {
  check_lambda(lambda);
  return -0.5 * static_cast<double>(beta.size()) * std::log(2.0 * kPi * lambda * lambda) -
         beta.squaredNorm() / (2.0 * lambda * lambda);
}

double log_sharkfin(const Eigen::Ref<const Eigen::VectorXd>& beta,
                    const Eigen::Ref<const Eigen::VectorXd>& q, double lambda) {
  check_lambda(lambda);
  if (q.size() != beta.size()) raise(ErrorKind::BadShape, "q must have one entry per coefficient");
  double total = 0.0;
  for (Index j = 0; j < beta.size(); ++j) {
    if (!(q(j) > 0.0 && q(j) < 1.0)) raise(ErrorKind::ConfigError, "shark-fin q must lie in (0, 1)");
    total += sharkfin_std(beta(j) / lambda, q(j));
  }
  return total - static_cast<double>(beta.size()) * std::log(lambda);
}

double log_nonlocal_mix(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda) {
  check_lambda(lambda);
  double total = 0.0;
  for (Index j = 0; j < beta.size(); ++j) total += nonlocal_std(beta(j) / lambda, -1.5, 1.5, 0.5);
  return total - static_cast<double>(beta.size()) * std::log(lambda);
}

double log_prior(const PriorSpec& spec, const Eigen::VectorXd& beta, double lambda) {
  check_lambda(lambda);
  if (beta.size() != spec.dimension()) {
    raise(ErrorKind::BadShape, "beta length does not match the prior dimension");
  }
  double total = 0.0;
  for (Index j = 0; j < beta.size(); ++j) total += log_density(spec.coordinate(j), beta(j), lambda);
  if (spec.has_user_term()) total += checked(spec.user_term()(beta, lambda), "user log-density");
  return checked(total, "log prior");
}

double log_prior_terms(const PriorSpec& spec, const Eigen::VectorXd& beta, double lambda,
                       std::span<const Index> members) {
  double total = 0.0;
  for (Index j : members) total += log_density(spec.coordinate(j), beta(j), lambda);
  if (spec.has_user_term()) total += checked(spec.user_term()(beta, lambda), "user log-density");
  return checked(total, "log prior");
}

}  // namespace eslr
