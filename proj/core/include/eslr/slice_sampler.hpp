#pragma once

#include "eslr/priors.hpp"
#include "eslr/regression_model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace eslr {

using Rng = std::mt19937_64;

struct SamplerConfig {
  std::size_t n_draws = 10000;
  std::size_t burn_in = 0;
  /// Defaults to one block per coefficient.
  std::optional<Blocking> blocking;
  double theta_init = std::numbers::pi / 2.0;
  int max_shrink_iters = 100;
  double ig_alpha = 1.0;
  double ig_gamma = 1.0;
  double mh_step_sd = 0.2;
  /// sd of the Gaussian hyperprior on log(lambda).
  double lambda_logprior_sd = 10.0;
  std::optional<double> ridge_c;
  bool sample_sigma2 = true;
  bool sample_lambda = true;
  /// Starting values. sigma2 defaults to the residual variance at the center,
  /// beta to the center itself.
  std::optional<double> sigma2_init;
  double lambda_init = 1.0;
  std::optional<Eigen::VectorXd> beta_init;
  std::uint64_t seed = 20180524;

  void validate() const;
};

/// Mutable state of one chain, including its generator.
struct ChainState {
  Eigen::VectorXd beta;
  double sigma2 = 1.0;
  double lambda = 1.0;
  std::vector<double> theta;
  Rng rng;
  std::normal_distribution<double> normal{0.0, 1.0};
  std::vector<std::uint64_t> rejection_counts;

  ChainState(Eigen::VectorXd beta0, double sigma2_0, double lambda_0, std::size_t n_blocks,
             double theta0, std::uint64_t seed);

  /// Uniform on the open interval (0, 1).
  double uniform();
};

/// Kept posterior draws, one row per iteration after burn-in, columns
/// (beta_1 .. beta_p, sigma2, lambda).
struct DrawsMatrix {
  Eigen::MatrixXd draws;
  Index p = 0;
  double wall_time_seconds = 0.0;
  std::uint64_t total_rejections = 0;
  std::uint64_t iterations = 0;
  std::uint64_t block_steps = 0;
  std::uint64_t lambda_accepts = 0;

  Eigen::MatrixXd beta() const { return draws.leftCols(p); }
  Eigen::VectorXd sigma2() const { return draws.col(p); }
  Eigen::VectorXd lambda() const { return draws.col(p + 1); }
  double rejections_per_iteration() const;
  double rejections_per_block_step() const;
};

/// One elliptical slice update of block k given the rest. Returns the number
/// of rejected proposals before acceptance.
std::uint64_t ess_block_step(ChainState& state, const ConditionalCache& cache, std::size_t k,
                             const PriorSpec& prior, const SufficientStatistics& stats,
                             int max_shrink_iters = 100);

/// Full-vector update: the block step with a single block. The cache must
/// have been built with Blocking::single_block.
std::uint64_t ess_full_step(ChainState& state, const ConditionalCache& full_cache,
                            const PriorSpec& prior, const SufficientStatistics& stats,
                            int max_shrink_iters = 100);
std::uint64_t ess_full_step(ChainState& state, const SufficientStatistics& stats,
                            const PriorSpec& prior, int max_shrink_iters = 100);

/// sigma2 ~ IG((n + alpha) / 2, (rss + gamma) / 2).
double draw_sigma2(Rng& rng, double rss, Index n, double ig_alpha, double ig_gamma);
double update_sigma2(ChainState& state, const SufficientStatistics& stats, double ig_alpha,
                     double ig_gamma);
double update_sigma2(ChainState& state, const Dataset& data, double ig_alpha, double ig_gamma);

/// Random-walk Metropolis-Hastings on log(lambda). Returns whether the
/// proposal was accepted.
bool update_lambda(ChainState& state, const PriorSpec& prior, double mh_step_sd,
                   double lambda_logprior_sd);
/// Same move with the log-scale increment and the uniform supplied.
bool update_lambda_with(ChainState& state, const PriorSpec& prior, double log_step,
                        double u, double lambda_logprior_sd);

/// Runs Gibbs sweeps over precomputed statistics. Instances are cheap to copy
/// relative to the cache and share nothing mutable, so several chains may run
/// concurrently over the same statistics.
class SliceSampler {
 public:
  SliceSampler(const SufficientStatistics& stats, const ConditionalCache& cache,
               const PriorSpec& prior, SamplerConfig config);

  ChainState initial_state() const;
  /// One full iteration: every block, then sigma2, then lambda.
  void sweep(ChainState& state, std::uint64_t& rejections, bool& lambda_accepted) const;
  DrawsMatrix run() const;

 private:
  const SufficientStatistics& stats_;
  const ConditionalCache& cache_;
  const PriorSpec& prior_;
  SamplerConfig config_;
  bool lambda_active_;
  std::vector<Eigen::VectorXd> block_offsets_;
};

DrawsMatrix run_chain(const Dataset& data, const PriorSpec& prior, const SamplerConfig& config);

}  // namespace eslr
