#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace eslr {

using Index = Eigen::Index;

/// Design matrix and response for Y = X beta + eps. Construct through
/// make_dataset() so the shape and finiteness checks always run.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;

  Index n() const noexcept { return X.rows(); }
  Index p() const noexcept { return X.cols(); }
};

Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXd y);

/// Gaussian likelihood factor of the posterior, in sufficient-statistic form.
///
/// `gram` is the precision (in units of 1/sigma^2) of the flat-prior
/// posterior: X^T X, or X^T X + I/c when a ridge adjustment is active. `center`
/// solves gram * center = X^T y, i.e. the OLS estimate or its ridge-adjusted
/// counterpart. `xtx` always holds the unadjusted X^T X so residual sums of
/// squares can be formed without touching the data again.
struct SufficientStatistics {
  Eigen::MatrixXd gram;
  Eigen::MatrixXd xtx;
  Eigen::VectorXd xty;
  Eigen::VectorXd center;
  double yty = 0.0;
  std::optional<double> ridge_c;
  Index n = 0;
  Index p = 0;

  /// (y - X beta)^T (y - X beta), clamped at zero against cancellation.
  double residual_sum_of_squares(const Eigen::VectorXd& beta) const;
};

/// Relative eigenvalue cutoff below which X^T X is treated as singular.
inline constexpr double kSingularityThreshold = 1e-12;

/// Ridge constant used when an adjustment is requested without a value.
inline constexpr double kDefaultRidgeC = 1.0;

SufficientStatistics compute_sufficient_stats(const Dataset& data,
                                              std::optional<double> ridge_c = std::nullopt);

/// Ordered partition of {0, ..., p-1} into nonempty blocks.
class Blocking {
 public:
  Blocking(std::vector<std::vector<Index>> blocks, Index p);

  static Blocking singletons(Index p);
  static Blocking single_block(Index p);
  /// Consecutive blocks of `block_size` (the last one may be shorter).
  static Blocking contiguous(Index p, Index block_size);

  std::size_t size() const noexcept { return blocks_.size(); }
  Index dimension() const noexcept { return p_; }
  const std::vector<Index>& block(std::size_t k) const { return blocks_.at(k); }
  const std::vector<std::vector<Index>>& blocks() const noexcept { return blocks_; }

 private:
  std::vector<std::vector<Index>> blocks_;
  Index p_;
};

/// Precomputed Gaussian conditional of one block given the others, with the
/// sigma^2 factor pulled out.
struct ConditionalBlock {
  std::vector<Index> members;
  std::vector<Index> rest;
  /// |k| x (p - |k|): maps (beta_rest - center_rest) to the conditional mean shift.
  Eigen::MatrixXd weights;
  /// Same map laid out over all p columns (zeros on the block's own columns).
  Eigen::MatrixXd dense_weights;
  /// Lower Cholesky factor of the unit-sigma^2 conditional covariance.
  Eigen::MatrixXd chol_unit;
};

class ConditionalCache {
 public:
  ConditionalCache(std::vector<ConditionalBlock> blocks, Index p)
      : blocks_(std::move(blocks)), p_(p) {}

  std::size_t size() const noexcept { return blocks_.size(); }
  Index dimension() const noexcept { return p_; }
  const ConditionalBlock& block(std::size_t k) const { return blocks_.at(k); }

 private:
  std::vector<ConditionalBlock> blocks_;
  Index p_;
};

/// Builds the per-block conditionals directly from the precision matrix: the
/// conditional covariance of block k is (A_kk)^-1 and the mean weights are
/// -(A_kk)^-1 A_{k,-k}, which equals the covariance-partition form.
ConditionalCache build_conditional_cache(const SufficientStatistics& stats,
                                         const Blocking& blocking);

struct ConditionalParams {
  Eigen::VectorXd mean;
  Eigen::MatrixXd scaled_chol;
};

ConditionalParams conditional_params(const ConditionalCache& cache, std::size_t k,
                                     const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& center, double sigma2);

}  // namespace eslr
