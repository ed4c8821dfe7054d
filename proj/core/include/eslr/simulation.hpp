#pragma once

#include "eslr/regression_model.hpp"
#include "eslr/slice_sampler.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string_view>

namespace eslr {

enum class RegressorKind { Independent, Factor };

std::string_view to_string(RegressorKind kind) noexcept;
RegressorKind parse_regressor_kind(std::string_view name);

/// Synthetic regression problem: sparse Gaussian coefficients, independent or
/// five-per-factor correlated regressors, noise sd kappa * ||beta||.
struct DgpConfig {
  Index p = 100;
  Index n = 1000;
  RegressorKind regressors = RegressorKind::Independent;
  double kappa = 1.0;
  /// Number of nonzero coefficients; ceil(sqrt(p)) when unset.
  std::optional<Index> sparsity;
  double factor_noise_sd = 0.1;
  std::uint64_t seed = 1;

  Index nonzeros() const;
  void validate() const;
};

/// Regressors loading on each factor in the factor design.
inline constexpr Index kFactorBlockSize = 5;

Eigen::VectorXd gen_sparse_beta(const DgpConfig& config, Rng& rng);

/// p x k loading matrix with rows 5j..5j+4 loading on factor j.
Eigen::MatrixXd factor_loadings(Index p);

Eigen::MatrixXd gen_regressors(const DgpConfig& config, Rng& rng);

struct SimulatedResponse {
  Eigen::VectorXd y;
  double sigma = 0.0;
};

SimulatedResponse gen_response(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta, double kappa,
                               Rng& rng);

struct SimulatedDataset {
  Dataset data;
  Eigen::VectorXd beta;
  double sigma = 0.0;
};

/// Coefficients, then regressors, then response, from one generator seeded
/// with config.seed.
SimulatedDataset simulate(const DgpConfig& config);

}  // namespace eslr
