#pragma once

#include "eslr/slice_sampler.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace eslr {

/// Sample autocorrelations at lags 0..max_lag with the biased (1/N)
/// autocovariance normalization.
std::vector<double> autocorrelation(const Eigen::Ref<const Eigen::VectorXd>& series,
                                    std::size_t max_lag);

/// N / (1 + 2 sum rho_k), truncating the sum with Geyer's initial positive
/// sequence and clamping the result to (0, N].
double effective_sample_size(const Eigen::Ref<const Eigen::VectorXd>& series);

/// sqrt(sum (mean_j - true_j)^2 / sum true_j^2).
double estimation_error(const Eigen::Ref<const Eigen::VectorXd>& beta_means,
                        const Eigen::Ref<const Eigen::VectorXd>& beta_true);

/// Linear-interpolation quantile (R type 7).
double quantile(std::vector<double> values, double prob);

struct CoordinateSummary {
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q975 = 0.0;
  /// Absent when the column is too short or constant.
  std::optional<double> ess;
};

struct ChainSummary {
  /// One entry per draws column: beta_1..beta_p, sigma2, lambda.
  std::vector<CoordinateSummary> columns;
  std::optional<double> min_ess;
  std::optional<double> median_ess;
  std::optional<double> ess_per_second;
  double wall_time_seconds = 0.0;
  double rejections_per_iteration = 0.0;
  std::optional<double> error;
};

/// Minimum and median ESS run over the coefficient columns only; ESS per
/// second divides the minimum by the chain's wall time.
ChainSummary summarize(const DrawsMatrix& draws,
                       const std::optional<Eigen::VectorXd>& beta_true = std::nullopt);

}  // namespace eslr
