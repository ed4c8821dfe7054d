#pragma once

#include "eslr/regression_model.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace eslr {

enum class PriorFamily {
  Flat,
  Horseshoe,
  Laplace,
  Ridge,
  SharkFin,
  NonLocalCauchyMix,
  UserDefined,
};

std::string_view to_string(PriorFamily family) noexcept;
/// Accepts the CLI spellings: flat, horseshoe, laplace, ridge, sharkfin, nonlocal.
PriorFamily parse_prior_family(std::string_view name);

/// Prior on a single coefficient. Every built-in family is a scale family in
/// the global scale lambda: density pi(beta / lambda) / lambda.
struct CoordinatePrior {
  PriorFamily family = PriorFamily::Flat;
  /// SharkFin: prior probability that the coefficient is negative.
  double q = 0.5;
  /// NonLocalCauchyMix: two Cauchy components, weight applies to the first.
  double location_lo = -1.5;
  double location_hi = 1.5;
  double weight_lo = 0.5;

  static CoordinatePrior flat() { return {}; }
  static CoordinatePrior horseshoe() { return {PriorFamily::Horseshoe}; }
  static CoordinatePrior laplace() { return {PriorFamily::Laplace}; }
  static CoordinatePrior ridge() { return {PriorFamily::Ridge}; }
  static CoordinatePrior sharkfin(double q);
  /// Standard Cauchy, i.e. the shark fin with q = 1/2.
  static CoordinatePrior cauchy() { return sharkfin(0.5); }
  static CoordinatePrior nonlocal(double location_lo = -1.5, double location_hi = 1.5,
                                  double weight_lo = 0.5);

  void validate() const;
};

/// Log density of the whole coefficient vector at a given lambda. Must be
/// reentrant; may return -inf but never NaN or +inf.
using UserLogDensity = std::function<double(const Eigen::VectorXd& beta, double lambda)>;

/// Independent per-coordinate priors plus an optional user-supplied term.
/// Coordinates whose family is UserDefined contribute only through the user
/// callback, which is evaluated once on the full vector.
class PriorSpec {
 public:
  PriorSpec(std::vector<CoordinatePrior> coordinates, bool sample_lambda,
            UserLogDensity user = {});

  static PriorSpec uniform(Index p, CoordinatePrior prior, bool sample_lambda);
  static PriorSpec user_defined(Index p, UserLogDensity user, bool sample_lambda);

  Index dimension() const noexcept { return static_cast<Index>(coords_.size()); }
  const CoordinatePrior& coordinate(Index j) const { return coords_.at(static_cast<std::size_t>(j)); }
  bool sample_lambda() const noexcept { return sample_lambda_; }
  bool has_user_term() const noexcept { return static_cast<bool>(user_); }
  const UserLogDensity& user_term() const noexcept { return user_; }
  /// False when every coordinate is Flat: lambda then has no effect.
  bool depends_on_lambda() const noexcept;

 private:
  std::vector<CoordinatePrior> coords_;
  bool sample_lambda_;
  UserLogDensity user_;
};

// Per-family evaluators, summed over coordinates. These are normalized
// densities, not just kernels; the horseshoe is its closed-form lower bound
// rescaled to unit mass.
double log_horseshoe(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda);
double log_laplace(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda);
double log_ridge(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda);
double log_sharkfin(const Eigen::Ref<const Eigen::VectorXd>& beta,
                    const Eigen::Ref<const Eigen::VectorXd>& q, double lambda);
double log_nonlocal_mix(const Eigen::Ref<const Eigen::VectorXd>& beta, double lambda);

/// |beta_j / lambda| is clamped from below at this value in the horseshoe,
/// whose density bound has a logarithmic pole at zero.
inline constexpr double kHorseshoeClamp = 1e-10;

/// Log density of one coefficient under one coordinate prior.
double log_density(const CoordinatePrior& prior, double beta, double lambda);

/// Full log prior: coordinate sum plus the user term, if any.
double log_prior(const PriorSpec& spec, const Eigen::VectorXd& beta, double lambda);

/// Log prior restricted to the terms that can change when only `members`
/// move. Differences of this quantity equal differences of log_prior for
/// such moves.
double log_prior_terms(const PriorSpec& spec, const Eigen::VectorXd& beta, double lambda,
                       std::span<const Index> members);

}  // namespace eslr
