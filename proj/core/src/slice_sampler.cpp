#include "eslr/slice_sampler.hpp"

#include "eslr/errors.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace eslr {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Slice target over the block: the prior terms that move with the block,
/// divided by N(0, c sigma2 I) when the ridge adjustment is in effect.
double block_target(const PriorSpec& prior, const Eigen::VectorXd& beta, double lambda,
                    double sigma2, const std::vector<Index>& members,
                    const std::optional<double>& ridge_c) {
  double value = log_prior_terms(prior, beta, lambda, members);
  if (ridge_c) {
    double ss = 0.0;
    for (Index j : members) ss += beta(j) * beta(j);
    value += ss / (2.0 * *ridge_c * sigma2);
  }
  return value;
}

std::uint64_t slice_update(ChainState& state, const ConditionalBlock& cb, std::size_t k,
                           const Eigen::VectorXd& mean, const PriorSpec& prior,
                           const std::optional<double>& ridge_c, int max_shrink_iters) {
  const auto m = static_cast<Index>(cb.members.size());

  Eigen::VectorXd delta(m);
  for (Index i = 0; i < m; ++i) delta(i) = state.beta(cb.members[i]) - mean(i);

  Eigen::VectorXd z(m);
  for (Index i = 0; i < m; ++i) z(i) = state.normal(state.rng);
  Eigen::VectorXd v = cb.chol_unit.triangularView<Eigen::Lower>() * z;
  v *= std::sqrt(state.sigma2);

  double& theta = state.theta[k];
  const double s0 = std::sin(theta);
  const double c0 = std::cos(theta);
  const Eigen::VectorXd v0 = delta * s0 + v * c0;
  const Eigen::VectorXd v1 = delta * c0 - v * s0;

  const double current =
      block_target(prior, state.beta, state.lambda, state.sigma2, cb.members, ridge_c);
  if (current == -std::numeric_limits<double>::infinity()) {
    raise(ErrorKind::ShrinkExhausted,
          "prior density is zero at the current state of block " + std::to_string(k));
  }
  const double level = current + std::log(state.uniform());

  double lo = 0.0;
  double hi = kTwoPi;
  for (int attempt = 0; attempt < max_shrink_iters; ++attempt) {
    const double proposal = lo + (hi - lo) * state.uniform();
    const double sp = std::sin(proposal);
    const double cp = std::cos(proposal);
    for (Index i = 0; i < m; ++i) state.beta(cb.members[i]) = mean(i) + v0(i) * sp + v1(i) * cp;

    const double value =
        block_target(prior, state.beta, state.lambda, state.sigma2, cb.members, ridge_c);
    if (value > level) {
      theta = proposal;
      state.rejection_counts[k] += static_cast<std::uint64_t>(attempt);
      return static_cast<std::uint64_t>(attempt);
    }
    if (proposal < theta) {
      lo = proposal;
    } else {
      hi = proposal;
    }
  }

  for (Index i = 0; i < m; ++i) state.beta(cb.members[i]) = mean(i) + delta(i);
  raise(ErrorKind::ShrinkExhausted, "no acceptable angle for block " + std::to_string(k) +
                                        " after " + std::to_string(max_shrink_iters) +
                                        " shrinkage steps");
}

double log_lambda_target(const PriorSpec& prior, const Eigen::VectorXd& beta, double lambda,
                         double logprior_sd) {
  const double l = std::log(lambda);
  return log_prior(prior, beta, lambda) - 0.5 * l * l / (logprior_sd * logprior_sd);
}

}  // namespace

void SamplerConfig::validate() const {
  if (n_draws == 0 || burn_in >= n_draws) {
    raise(ErrorKind::ConfigError, "need n_draws > burn_in >= 0");
  }
  if (!(theta_init >= 0.0 && theta_init < kTwoPi)) {
    raise(ErrorKind::ConfigError, "theta_init must lie in [0, 2pi)");
  }
  if (max_shrink_iters < 1) raise(ErrorKind::ConfigError, "max_shrink_iters must be positive");
  for (double v : {ig_alpha, ig_gamma, mh_step_sd, lambda_logprior_sd, lambda_init}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      raise(ErrorKind::ConfigError, "sampler scalars must be positive and finite");
    }
  }
  if (sigma2_init && !(*sigma2_init > 0.0 && std::isfinite(*sigma2_init))) {
    raise(ErrorKind::ConfigError, "sigma2_init must be positive and finite");
  }
  if (ridge_c && !(*ridge_c > 0.0 && std::isfinite(*ridge_c))) {
    raise(ErrorKind::ConfigError, "ridge_c must be positive and finite");
  }
}

ChainState::ChainState(Eigen::VectorXd beta0, double sigma2_0, double lambda_0,
                       std::size_t n_blocks, double theta0, std::uint64_t seed)
    : beta(std::move(beta0)),
      sigma2(sigma2_0),
      lambda(lambda_0),
      theta(n_blocks, theta0),
      rng(seed),
      rejection_counts(n_blocks, 0) {}

double ChainState::uniform() {
  double u = 0.0;
  while (u == 0.0) u = std::generate_canonical<double, 53>(rng);
  return u;
}

double DrawsMatrix::rejections_per_iteration() const {
  return iterations ? static_cast<double>(total_rejections) / static_cast<double>(iterations) : 0.0;
}

double DrawsMatrix::rejections_per_block_step() const {
  return block_steps ? static_cast<double>(total_rejections) / static_cast<double>(block_steps)
                     : 0.0;
}

std::uint64_t ess_block_step(ChainState& state, const ConditionalCache& cache, std::size_t k,
                             const PriorSpec& prior, const SufficientStatistics& stats,
                             int max_shrink_iters) {
  if (k >= cache.size()) raise(ErrorKind::InvalidArgument, "block index out of range");
  if (state.theta.size() != cache.size() || state.rejection_counts.size() != cache.size()) {
    raise(ErrorKind::InvalidArgument, "chain state was sized for a different blocking");
  }
  const ConditionalParams cond = conditional_params(cache, k, state.beta, stats.center, state.sigma2);
  return slice_update(state, cache.block(k), k, cond.mean, prior, stats.ridge_c, max_shrink_iters);
}

std::uint64_t ess_full_step(ChainState& state, const ConditionalCache& full_cache,
                            const PriorSpec& prior, const SufficientStatistics& stats,
                            int max_shrink_iters) {
  if (full_cache.size() != 1) {
    raise(ErrorKind::InvalidArgument, "full-vector step needs a single-block cache");
  }
  return ess_block_step(state, full_cache, 0, prior, stats, max_shrink_iters);
}

std::uint64_t ess_full_step(ChainState& state, const SufficientStatistics& stats,
                            const PriorSpec& prior, int max_shrink_iters) {
  const ConditionalCache cache = build_conditional_cache(stats, Blocking::single_block(stats.p));
  return ess_full_step(state, cache, prior, stats, max_shrink_iters);
}

double draw_sigma2(Rng& rng, double rss, Index n, double ig_alpha, double ig_gamma) {
  if (rss < 0.0) raise(ErrorKind::InvalidArgument, "residual sum of squares must be nonnegative");
  const double shape = 0.5 * (static_cast<double>(n) + ig_alpha);
  const double scale = 0.5 * (rss + ig_gamma);
  std::gamma_distribution<double> gamma(shape, 1.0);
  return scale / gamma(rng);
}

double update_sigma2(ChainState& state, const SufficientStatistics& stats, double ig_alpha,
                     double ig_gamma) {
  state.sigma2 = draw_sigma2(state.rng, stats.residual_sum_of_squares(state.beta), stats.n,
                             ig_alpha, ig_gamma);
  return state.sigma2;
}

double update_sigma2(ChainState& state, const Dataset& data, double ig_alpha, double ig_gamma) {
  const double rss = (data.y - data.X * state.beta).squaredNorm();
  state.sigma2 = draw_sigma2(state.rng, rss, data.n(), ig_alpha, ig_gamma);
  return state.sigma2;
}

bool update_lambda_with(ChainState& state, const PriorSpec& prior, double log_step, double u,
                        double lambda_logprior_sd) {
  const double proposal = std::exp(std::log(state.lambda) + log_step);
  if (!(proposal > 0.0) || !std::isfinite(proposal)) return false;
  const double log_eta = log_lambda_target(prior, state.beta, proposal, lambda_logprior_sd) -
                         log_lambda_target(prior, state.beta, state.lambda, lambda_logprior_sd) +
                         std::log(proposal) - std::log(state.lambda);
  if (std::log(u) < log_eta) {
    state.lambda = proposal;
    return true;
  }
  return false;
}

bool update_lambda(ChainState& state, const PriorSpec& prior, double mh_step_sd,
                   double lambda_logprior_sd) {
  const double r = mh_step_sd * state.normal(state.rng);
  const double u = state.uniform();
  return update_lambda_with(state, prior, r, u, lambda_logprior_sd);
}

SliceSampler::SliceSampler(const SufficientStatistics& stats, const ConditionalCache& cache,
                           const PriorSpec& prior, SamplerConfig config)
    : stats_(stats), cache_(cache), prior_(prior), config_(std::move(config)) {
  config_.validate();
  if (prior_.dimension() != stats_.p || cache_.dimension() != stats_.p) {
    raise(ErrorKind::ConfigError, "prior, statistics and cache dimensions disagree");
  }
  if (config_.ridge_c != stats_.ridge_c) {
    raise(ErrorKind::ConfigError, "ridge_c differs between the config and the statistics");
  }
  if (config_.beta_init && config_.beta_init->size() != stats_.p) {
    raise(ErrorKind::ConfigError, "beta_init has the wrong length");
  }
  lambda_active_ = config_.sample_lambda && prior_.sample_lambda() && prior_.depends_on_lambda();

  // center_k - W_k center: the constant part of each conditional mean.
  block_offsets_.reserve(cache_.size());
  for (std::size_t k = 0; k < cache_.size(); ++k) {
    const ConditionalBlock& cb = cache_.block(k);
    Eigen::VectorXd off = -(cb.dense_weights * stats_.center);
    for (std::size_t i = 0; i < cb.members.size(); ++i) {
      off(static_cast<Index>(i)) += stats_.center(cb.members[i]);
    }
    block_offsets_.push_back(std::move(off));
  }
}

ChainState SliceSampler::initial_state() const {
  Eigen::VectorXd beta = config_.beta_init ? *config_.beta_init : stats_.center;
  double sigma2 = 1.0;
  if (config_.sigma2_init) {
    sigma2 = *config_.sigma2_init;
  } else if (stats_.n > stats_.p) {
    sigma2 = std::max(stats_.residual_sum_of_squares(stats_.center) /
                          static_cast<double>(stats_.n - stats_.p),
                      1e-12);
  }
  return ChainState(std::move(beta), sigma2, config_.lambda_init, cache_.size(),
                    config_.theta_init, config_.seed);
}

void SliceSampler::sweep(ChainState& state, std::uint64_t& rejections,
                         bool& lambda_accepted) const {
  Eigen::VectorXd mean;
  for (std::size_t k = 0; k < cache_.size(); ++k) {
    const ConditionalBlock& cb = cache_.block(k);
    mean.noalias() = cb.dense_weights * state.beta;
    mean += block_offsets_[k];
    rejections +=
        slice_update(state, cb, k, mean, prior_, stats_.ridge_c, config_.max_shrink_iters);
  }
  if (config_.sample_sigma2) update_sigma2(state, stats_, config_.ig_alpha, config_.ig_gamma);
  lambda_accepted = false;
  if (lambda_active_) {
    lambda_accepted =
        update_lambda(state, prior_, config_.mh_step_sd, config_.lambda_logprior_sd);
  }
}

DrawsMatrix SliceSampler::run() const {
  const auto start = std::chrono::steady_clock::now();
  ChainState state = initial_state();
  const Index p = stats_.p;

  DrawsMatrix out;
  out.p = p;
  out.draws.resize(static_cast<Index>(config_.n_draws - config_.burn_in), p + 2);

  for (std::size_t it = 0; it < config_.n_draws; ++it) {
    bool accepted = false;
    sweep(state, out.total_rejections, accepted);
    out.lambda_accepts += accepted ? 1 : 0;
    if (it >= config_.burn_in) {
      const auto row = static_cast<Index>(it - config_.burn_in);
      out.draws.row(row).head(p) = state.beta.transpose();
      out.draws(row, p) = state.sigma2;
      out.draws(row, p + 1) = state.lambda;
    }
  }
  out.iterations = config_.n_draws;
  out.block_steps = config_.n_draws * cache_.size();
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

DrawsMatrix run_chain(const Dataset& data, const PriorSpec& prior, const SamplerConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const SufficientStatistics stats = compute_sufficient_stats(data, config.ridge_c);
  const Blocking blocking = config.blocking ? *config.blocking : Blocking::singletons(stats.p);
  const ConditionalCache cache = build_conditional_cache(stats, blocking);
  const double setup =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  DrawsMatrix out = SliceSampler(stats, cache, prior, config).run();
  out.wall_time_seconds += setup;
  return out;
}

}  // namespace eslr
