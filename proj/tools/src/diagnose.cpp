#include "eslr_cli/cli.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace eslr::cli {
namespace {

Dataset small_problem(Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  const Index n = 20;
  Eigen::MatrixXd X(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) X(i, j) = z(rng);
  Eigen::VectorXd y = X * Eigen::VectorXd::LinSpaced(p, 0.3, -0.2);
  for (Index i = 0; i < n; ++i) y(i) += z(rng);
  return make_dataset(std::move(X), std::move(y));
}

double mc_se(const Eigen::VectorXd& chain) {
  const double m = chain.mean();
  const double sd = std::sqrt((chain.array() - m).square().sum() / static_cast<double>(chain.size() - 1));
  return sd / std::sqrt(effective_sample_size(chain));
}

/// The prior the sampler sees: the true one, or the true one evaluated at a
/// tenth of the scale.
PriorSpec sampler_prior(const PriorSpec& truth, bool broken) {
  if (!broken) return truth;
  return PriorSpec::user_defined(
      truth.dimension(),
      [truth](const Eigen::VectorXd& b, double l) { return log_prior(truth, b, 0.1 * l); }, false);
}

SamplerConfig fixed(std::size_t draws, std::uint64_t seed, Index p, double sigma2, double lambda) {
  SamplerConfig c;
  c.n_draws = draws;
  c.burn_in = draws / 10;
  c.sample_sigma2 = false;
  c.sample_lambda = false;
  c.sigma2_init = sigma2;
  c.lambda_init = lambda;
  c.seed = seed;
  c.blocking = Blocking::single_block(p);
  return c;
}

DiagnoseCheck compare_means(std::string name, const DrawsMatrix& draws,
                            const Eigen::VectorXd& target) {
  DiagnoseCheck check{std::move(name), true, {}};
  std::ostringstream detail;
  for (Index j = 0; j < target.size(); ++j) {
    const Eigen::VectorXd col = draws.draws.col(j);
    const double diff = std::abs(col.mean() - target(j));
    const double tol = std::max(4.0 * mc_se(col), 1e-3);
    detail << (j ? "; " : "") << "beta" << j + 1 << " chain " << col.mean() << " oracle "
           << target(j) << " tol " << tol;
    check.passed = check.passed && diff < tol;
  }
  check.detail = detail.str();
  return check;
}

}  // namespace

std::vector<DiagnoseCheck> run_diagnostics(std::size_t draws, std::uint64_t seed,
                                           bool broken_prior) {
  const double sigma2 = 1.0;
  const double lambda = 0.3;
  std::vector<DiagnoseCheck> checks;

  {
    const Dataset data = small_problem(2, 11);
    const auto stats = compute_sufficient_stats(data);
    const auto exact = conjugate_ridge_posterior(stats, lambda, sigma2);
    const auto quad = quadrature_posterior_moments(
        data, PriorSpec::uniform(2, CoordinatePrior::ridge(), false), sigma2, lambda,
        QuadratureSpec::around_likelihood(data, sigma2, 10.0, 1001));
    const double gap = std::max((exact.mean - quad.mean).cwiseAbs().maxCoeff(),
                                (exact.covariance.diagonal() - quad.variance).cwiseAbs().maxCoeff());
    checks.push_back({"ridge_conjugate_vs_quadrature", gap < 1e-4,
                      "max moment gap " + std::to_string(gap)});

    const auto truth = PriorSpec::uniform(2, CoordinatePrior::ridge(), false);
    const auto chain =
        run_chain(data, sampler_prior(truth, broken_prior), fixed(draws, seed, 2, sigma2, lambda));
    checks.push_back(compare_means("ridge_chain_vs_conjugate", chain, exact.mean));
  }

  const Dataset data = small_problem(1, 12);
  for (const auto& cp : {CoordinatePrior::laplace(), CoordinatePrior::horseshoe(),
                         CoordinatePrior::sharkfin(0.25), CoordinatePrior::nonlocal()}) {
    const auto truth = PriorSpec::uniform(1, cp, false);
    const auto quad = quadrature_posterior_moments(
        data, truth, sigma2, lambda, QuadratureSpec::around_likelihood(data, sigma2, 12.0, 20001));
    const auto chain =
        run_chain(data, sampler_prior(truth, broken_prior), fixed(draws, seed + 1, 1, sigma2, lambda));
    checks.push_back(
        compare_means(std::string(to_string(cp.family)) + "_chain_vs_quadrature", chain, quad.mean));
  }
  return checks;
}

}  // namespace eslr::cli
