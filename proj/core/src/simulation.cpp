#include "eslr/simulation.hpp"

#include "eslr/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace eslr {

std::string_view to_string(RegressorKind kind) noexcept {
  return kind == RegressorKind::Factor ? "factor" : "independent";
}

RegressorKind parse_regressor_kind(std::string_view name) {
  if (name == "independent") return RegressorKind::Independent;
  if (name == "factor") return RegressorKind::Factor;
  raise(ErrorKind::ConfigError, "unknown regressor structure '" + std::string(name) + "'");
}

Index DgpConfig::nonzeros() const {
  if (sparsity) return *sparsity;
  return static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(p))));
}

void DgpConfig::validate() const {
  if (p < 1 || n < 1) raise(ErrorKind::BadShape, "p and n must be positive");
  const Index s = nonzeros();
  if (s < 1 || s > p) raise(ErrorKind::ConfigError, "sparsity must lie in [1, p]");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) raise(ErrorKind::ConfigError, "kappa must be positive");
  if (!(factor_noise_sd >= 0.0)) raise(ErrorKind::ConfigError, "factor noise sd must be nonnegative");
  if (regressors == RegressorKind::Factor && p % kFactorBlockSize != 0) {
    raise(ErrorKind::BadShape, "factor regressors need p divisible by 5");
  }
}

Eigen::VectorXd gen_sparse_beta(const DgpConfig& config, Rng& rng) {
  config.validate();
  const Index p = config.p;
  std::vector<Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Index{0});

  // Partial Fisher-Yates: the first `s` slots become the support.
  const Index s = config.nonzeros();
  for (Index i = 0; i < s; ++i) {
    std::uniform_int_distribution<Index> pick(i, p - 1);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (Index i = 0; i < s; ++i) beta(order[static_cast<std::size_t>(i)]) = normal(rng);
  return beta;
}

Eigen::MatrixXd factor_loadings(Index p) {
  if (p % kFactorBlockSize != 0) raise(ErrorKind::BadShape, "factor loadings need p divisible by 5");
  const Index k = p / kFactorBlockSize;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(p, k);
  for (Index j = 0; j < p; ++j) B(j, j / kFactorBlockSize) = 1.0;
  return B;
}

Eigen::MatrixXd gen_regressors(const DgpConfig& config, Rng& rng) {
  config.validate();
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index n = config.n;
  const Index p = config.p;
  Eigen::MatrixXd X(n, p);

  if (config.regressors == RegressorKind::Independent) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < p; ++j) X(i, j) = normal(rng);
    }
    return X;
  }

  const Index k = p / kFactorBlockSize;
  Eigen::MatrixXd F(k, n);
  for (Index i = 0; i < n; ++i) {
    for (Index f = 0; f < k; ++f) F(f, i) = normal(rng);
  }
  X = (factor_loadings(p) * F).transpose();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) X(i, j) += config.factor_noise_sd * normal(rng);
  }
  return X;
}

SimulatedResponse gen_response(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta, double kappa,
                               Rng& rng) {
  if (X.cols() != beta.size()) raise(ErrorKind::BadShape, "X columns must match beta length");
  if (!(kappa > 0.0)) raise(ErrorKind::ConfigError, "kappa must be positive");
  const double norm = beta.norm();
  if (!(norm > 0.0)) raise(ErrorKind::ZeroSignal, "coefficients are all zero, so sigma would be 0");

  SimulatedResponse out;
  out.sigma = kappa * norm;
  std::normal_distribution<double> noise(0.0, out.sigma);
  out.y = X * beta;
  for (Index i = 0; i < out.y.size(); ++i) out.y(i) += noise(rng);
  return out;
}

SimulatedDataset simulate(const DgpConfig& config) {
  config.validate();
  Rng rng(config.seed);
  Eigen::VectorXd beta = gen_sparse_beta(config, rng);
  Eigen::MatrixXd X = gen_regressors(config, rng);
  SimulatedResponse response = gen_response(X, beta, config.kappa, rng);
  return SimulatedDataset{make_dataset(std::move(X), std::move(response.y)), std::move(beta),
                          response.sigma};
}

}  // namespace eslr
