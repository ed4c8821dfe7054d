// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when everything passes).

#include "eslr_cli/cli.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

using namespace eslr;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double sd_of(const Eigen::VectorXd& x) {
  return std::sqrt((x.array() - x.mean()).square().sum() / static_cast<double>(x.size() - 1));
}

double mc_se(const Eigen::VectorXd& x) { return sd_of(x) / std::sqrt(effective_sample_size(x)); }

Dataset normal_design(Index n, const Eigen::VectorXd& beta, double noise_sd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Eigen::MatrixXd X(n, beta.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < beta.size(); ++j) X(i, j) = z(rng);
  Eigen::VectorXd y = X * beta;
  for (Index i = 0; i < n; ++i) y(i) += noise_sd * z(rng);
  return make_dataset(std::move(X), std::move(y));
}

SamplerConfig fixed_scales(std::size_t draws, double sigma2, double lambda, std::uint64_t seed) {
  SamplerConfig c;
  c.n_draws = draws;
  c.sample_sigma2 = false;
  c.sample_lambda = false;
  c.sigma2_init = sigma2;
  c.lambda_init = lambda;
  c.seed = seed;
  return c;
}

// 1 ---------------------------------------------------------------------
void flat_prior_exactness(Verdict& v) {
  const auto t0 = Clock::now();
  Eigen::VectorXd beta(5);
  beta << 1.0, -0.5, 0.25, 0.0, 2.0;
  const auto data = normal_design(200, beta, 1.0, 101);
  const double sigma2 = 1.0;
  const auto draws =
      run_chain(data, PriorSpec::uniform(5, CoordinatePrior::flat(), false),
                fixed_scales(50000, sigma2, 1.0, 102));
  const auto stats = compute_sufficient_stats(data);

  double worst = 0.0;
  for (Index j = 0; j < 5; ++j) {
    const Eigen::VectorXd col = draws.draws.col(j);
    worst = std::max(worst, std::abs(col.mean() - stats.center(j)) / mc_se(col));
  }
  const Eigen::MatrixXd b = draws.beta();
  const Eigen::MatrixXd centered = b.rowwise() - b.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(b.rows() - 1);
  const Eigen::MatrixXd target = sigma2 * stats.xtx.inverse();
  const double rel = (cov - target).norm() / target.norm();
  const double t = seconds_since(t0);
  v.detail << "max |mean - OLS| = " << worst << " SE, cov rel err " << rel << ", " << t << " s";
  v.require(worst < 3.0, "mean within 3 SE");
  v.require(rel < 0.10, "covariance within 10%");
  v.require(t < 10.0, "runtime < 10 s");
}

// 2 ---------------------------------------------------------------------
void conjugate_ridge(Verdict& v) {
  const auto t0 = Clock::now();
  double worst_mean = 0.0;
  double worst_var = 0.0;
  for (Index p : {1, 2, 5}) {
    const auto data = normal_design(30, Eigen::VectorXd::LinSpaced(p, 0.8, -0.6), 1.2,
                                    200 + static_cast<std::uint64_t>(p));
    const double sigma2 = 1.5;
    const double lambda = 0.4;
    const auto oracle = conjugate_ridge_posterior(compute_sufficient_stats(data), lambda, sigma2);
    const auto draws = run_chain(data, PriorSpec::uniform(p, CoordinatePrior::ridge(), false),
                                 fixed_scales(1000000, sigma2, lambda, 210 + static_cast<std::uint64_t>(p)));
    for (Index j = 0; j < p; ++j) {
      const Eigen::VectorXd col = draws.draws.col(j);
      const Eigen::VectorXd sq = (col.array() - oracle.mean(j)).square().matrix();
      worst_mean = std::max(worst_mean, std::abs(col.mean() - oracle.mean(j)) / mc_se(col));
      worst_var = std::max(worst_var, std::abs(sq.mean() - oracle.covariance(j, j)) / mc_se(sq));
    }
  }
  const double t = seconds_since(t0);
  v.detail << "max mean dev " << worst_mean << " SE, max var dev " << worst_var << " SE, " << t
           << " s";
  v.require(worst_mean < 3.0, "means within 3 SE");
  v.require(worst_var < 3.0, "variances within 3 SE");
  v.require(t < 30.0, "runtime < 30 s");
}

// 3 ---------------------------------------------------------------------
void quadrature_oracle(Verdict& v) {
  const auto t0 = Clock::now();
  const double sigma2 = 1.0;
  const double lambda = 0.5;
  double worst = 0.0;
  std::string worst_name;
  for (Index p : {1, 2}) {
    const auto data = normal_design(20, Eigen::VectorXd::LinSpaced(p, 0.4, -0.3), 1.0,
                                    300 + static_cast<std::uint64_t>(p));
    const auto grid = QuadratureSpec::around_likelihood(data, sigma2, 12.0, p == 1 ? 20001 : 2001);
    for (const auto& cp : {CoordinatePrior::horseshoe(), CoordinatePrior::laplace(),
                           CoordinatePrior::sharkfin(0.25), CoordinatePrior::nonlocal()}) {
      const auto prior = PriorSpec::uniform(p, cp, false);
      const auto quad = quadrature_posterior_moments(data, prior, sigma2, lambda, grid);
      const auto draws = run_chain(data, prior, fixed_scales(100000, sigma2, lambda, 310));
      for (Index j = 0; j < p; ++j) {
        const Eigen::VectorXd col = draws.draws.col(j);
        const double tol = std::max(3.0 * mc_se(col), 1e-3);
        const double ratio = std::abs(col.mean() - quad.mean(j)) / tol;
        if (ratio > worst) {
          worst = ratio;
          worst_name = std::string(to_string(cp.family)) + " p=" + std::to_string(p);
        }
      }
    }
  }
  const double t = seconds_since(t0);
  v.detail << "worst |chain - quadrature| / tolerance = " << worst << " (" << worst_name << "), "
           << t << " s";
  v.require(worst < 1.0, "all means within tolerance");
  v.require(t < 120.0, "runtime < 2 min");
}

// 4 ---------------------------------------------------------------------
void rank_deficient(Verdict& v) {
  const auto t0 = Clock::now();
  const Index n = 50;
  const double sigma2 = 1.0;
  const double lambda = 0.5;
  std::mt19937_64 rng(401);
  std::normal_distribution<double> z;
  Eigen::VectorXd x(n), y(n);
  for (Index i = 0; i < n; ++i) {
    x(i) = z(rng);
    y(i) = 0.3 * x(i) + z(rng);
  }
  Eigen::MatrixXd dup(n, 2);
  dup << x, x;
  const auto dup_data = make_dataset(dup, y);
  const auto single_data = make_dataset(Eigen::MatrixXd(x), y);

  // beta1 + beta2 has prior N(0, 2 lambda^2), so the matching single-column
  // problem uses scale sqrt(2) lambda.
  auto dup_config = fixed_scales(50000, sigma2, lambda, 402);
  dup_config.ridge_c = 1.0;
  const auto dup_draws =
      run_chain(dup_data, PriorSpec::uniform(2, CoordinatePrior::ridge(), false), dup_config);
  const Eigen::VectorXd sum = dup_draws.draws.col(0) + dup_draws.draws.col(1);

  const double single_lambda = std::sqrt(2.0) * lambda;
  const auto single_draws =
      run_chain(single_data, PriorSpec::uniform(1, CoordinatePrior::ridge(), false),
                fixed_scales(50000, sigma2, single_lambda, 403));
  const Eigen::VectorXd one = single_draws.draws.col(0);
  const auto exact =
      conjugate_ridge_posterior(compute_sufficient_stats(single_data), single_lambda, sigma2);

  const double vs_chain =
      std::abs(sum.mean() - one.mean()) / std::hypot(mc_se(sum), mc_se(one));
  const double vs_exact = std::abs(sum.mean() - exact.mean(0)) / mc_se(sum);
  const Eigen::VectorXd sq = (sum.array() - exact.mean(0)).square().matrix();
  const double var_dev = std::abs(sq.mean() - exact.covariance(0, 0)) / mc_se(sq);
  const double t = seconds_since(t0);
  v.detail << "sum mean " << sum.mean() << " vs single " << one.mean() << " (" << vs_chain
           << " SE), vs exact " << vs_exact << " SE, variance " << var_dev << " SE, " << t << " s";
  v.require(vs_chain < 3.0, "sum matches single-column chain");
  v.require(vs_exact < 3.0, "sum mean matches exact");
  v.require(var_dev < 3.0, "sum variance matches exact");
  v.require(t < 30.0, "runtime < 30 s");
}

// 5, 6 ------------------------------------------------------------------
double mean_ratio(const std::string& prior, RegressorKind structure, std::ostringstream& log) {
  cli::BenchmarkGrid grid;  // 50,000 draws, 20,000 burn-in, seeds 1..10
  double total = 0.0;
  for (int r = 0; r < grid.replicates; ++r) {
    const auto row = cli::benchmark_one(prior, 100, 1000, 1.0, structure, r, grid);
    total += row.slice_error / row.ols_error;
    std::cerr << "    " << prior << " " << to_string(structure) << " rep " << r << ": slice "
              << row.slice_error << " ols " << row.ols_error << " ratio "
              << row.slice_error / row.ols_error << "\n";
  }
  const double m = total / grid.replicates;
  log << prior << " " << m << "  ";
  return m;
}

void table1_ratios(Verdict& v) {
  const auto t0 = Clock::now();
  const double hs = mean_ratio("horseshoe", RegressorKind::Independent, v.detail);
  const double ridge = mean_ratio("ridge", RegressorKind::Independent, v.detail);
  const double lap = mean_ratio("laplace", RegressorKind::Independent, v.detail);
  v.detail << "(" << seconds_since(t0) << " s)";
  v.require(hs >= 0.30 && hs <= 0.60, "horseshoe in [0.30, 0.60]");
  v.require(ridge >= 0.85 && ridge <= 1.0, "ridge in [0.85, 1.0]");
  v.require(lap >= 0.55 && lap <= 0.85, "laplace in [0.55, 0.85]");
}

void table2_ratio(Verdict& v) {
  const auto t0 = Clock::now();
  const double hs = mean_ratio("horseshoe", RegressorKind::Factor, v.detail);
  v.detail << "(" << seconds_since(t0) << " s)";
  v.require(hs >= 0.25 && hs <= 0.50, "factor horseshoe in [0.25, 0.50]");
}

// 7 ---------------------------------------------------------------------
void ess_calibration(Verdict& v) {
  const Index n = 100000;
  for (double rho : {0.0, 0.5, 0.9}) {
    std::mt19937_64 rng(700 + static_cast<std::uint64_t>(rho * 10));
    std::normal_distribution<double> z;
    Eigen::VectorXd x(n);
    x(0) = z(rng) / std::sqrt(1.0 - rho * rho);
    for (Index i = 1; i < n; ++i) x(i) = rho * x(i - 1) + z(rng);
    const double expected = static_cast<double>(n) * (1.0 - rho) / (1.0 + rho);
    const double got = effective_sample_size(x);
    v.detail << "rho " << rho << ": " << got << " vs " << expected << "  ";
    v.require(std::abs(got - expected) <= 0.10 * expected, "within 10% at rho " + std::to_string(rho));
  }
}

// 8 ---------------------------------------------------------------------
void rejection_profile(Verdict& v) {
  const auto t0 = Clock::now();
  cli::BenchmarkGrid grid;
  grid.draws = 10000;
  grid.burnin = cli::default_burnin(grid.draws);
  std::vector<double> mean_rej;
  for (double snr : {1.0, 2.0, 4.0, 10.0}) {
    double total = 0.0;
    for (int r = 0; r < grid.replicates; ++r) {
      total += cli::benchmark_one("horseshoe", 100, 1000, 1.0 / snr, RegressorKind::Independent, r,
                                  grid)
                   .rejections_per_block_step;
    }
    mean_rej.push_back(total / grid.replicates);
    v.detail << "SNR " << snr << ": " << mean_rej.back() << "  ";
  }
  const double lo = std::min({mean_rej[0], mean_rej[1], mean_rej[2]});
  const double hi = std::max({mean_rej[0], mean_rej[1], mean_rej[2]});
  v.detail << "(" << seconds_since(t0) << " s)";
  v.require(mean_rej[3] < mean_rej[0], "SNR 10 below SNR 1");
  v.require(hi <= 1.25 * lo, "SNR 1, 2, 4 within 25%");
}

// 9 ---------------------------------------------------------------------
double integrate_density(const CoordinatePrior& cp, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> rule;
  auto f = [&](double x) { return std::exp(log_density(cp, x, 1.0)); };
  double total = 0.0;
  if (lo < 0.0) total += rule.integrate(f, lo, std::min(hi, 0.0));
  if (hi > 0.0) total += rule.integrate(f, std::max(lo, 0.0), hi);
  return total;
}

void prior_suite(Verdict& v) {
  const std::vector<CoordinatePrior> families{
      CoordinatePrior::horseshoe(), CoordinatePrior::laplace(), CoordinatePrior::ridge(),
      CoordinatePrior::sharkfin(0.25), CoordinatePrior::nonlocal()};
  double worst_mass = 0.0;
  for (const auto& cp : families) {
    worst_mass = std::max(worst_mass, std::abs(integrate_density(cp, -1e4, 1e4) - 1.0));
  }
  v.require(worst_mass < 1e-3, "normalization");

  double worst_scale = 0.0;
  std::mt19937_64 rng(900);
  std::normal_distribution<double> z(0.0, 3.0);
  for (const auto& cp : families) {
    for (int rep = 0; rep < 50; ++rep) {
      const double b = z(rng);
      const double l = std::exp(0.4 * z(rng));
      worst_scale = std::max(worst_scale, std::abs(log_density(cp, b, l) -
                                                   (log_density(cp, b / l, 1.0) - std::log(l))));
    }
  }
  v.require(worst_scale < 1e-10, "scale-family identity");

  bool tails = true;
  for (double b : {-4.0, 4.0}) {
    const double hs = log_density(CoordinatePrior::horseshoe(), b, 1.0);
    const double lap = log_density(CoordinatePrior::laplace(), b, 1.0);
    const double gau = log_density(CoordinatePrior::ridge(), b, 1.0);
    tails = tails && hs > lap && lap > gau;
  }
  v.require(tails, "tail ordering at |beta| = 4");

  const double left = integrate_density(CoordinatePrior::sharkfin(0.25), -1e6, 0.0);
  v.require(std::abs(left - 0.25) < 1e-3, "shark-fin left mass");

  const auto sf = CoordinatePrior::sharkfin(0.25);
  const double mirror = std::abs(log_density(sf, -1.0, 1.0) - log_density(sf, 3.0, 1.0));
  v.require(mirror < 1e-12, "shark-fin mirror identity");

  v.detail << "max |mass - 1| " << worst_mass << ", scale identity " << worst_scale
           << ", left mass " << left << ", mirror gap " << mirror;
}

// 10 --------------------------------------------------------------------
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(Verdict& v) {
  std::ostringstream sink;
  auto cli_run = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };
  int compared = 0;
  for (const char* tag : {"a", "b"}) {
    cli_run({"simulate", "--p", "20", "--n", "60", "--seed", "10", "--structure", "factor",
             "--out", std::string("acc_data_") + tag + ".csv", "--truth-out",
             std::string("acc_truth_") + tag + ".csv"});
  }
  v.require(slurp("acc_data_a.csv") == slurp("acc_data_b.csv") && !slurp("acc_data_a.csv").empty(),
            "simulate output identical");
  ++compared;
  for (const char* prior : {"flat", "horseshoe", "laplace", "ridge", "sharkfin", "nonlocal"}) {
    for (const char* block : {"1", "4"}) {
      std::string files[2];
      for (int k = 0; k < 2; ++k) {
        files[k] = std::string("acc_draws_") + prior + "_" + block + "_" + std::to_string(k) + ".csv";
        const int rc = cli_run({"fit", "--data", "acc_data_a.csv", "--prior", prior, "--draws",
                                "1500", "--block-size", block, "--seed", "77", "--draws-out",
                                files[k], "--summary-out", "acc_summary.csv"});
        v.require(rc == 0, std::string("fit ") + prior + " ran");
      }
      v.require(slurp(files[0]) == slurp(files[1]) && !slurp(files[0]).empty(),
                std::string("draws identical for ") + prior);
      ++compared;
      for (const auto& f : files) std::remove(f.c_str());
    }
  }
  v.detail << compared << " repeated invocations compared byte for byte";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "flat-prior exactness", flat_prior_exactness},
      {2, "conjugate ridge oracle", conjugate_ridge},
      {3, "quadrature oracle", quadrature_oracle},
      {4, "rank-deficient ridge pathway", rank_deficient},
      {5, "independent-design error ratios", table1_ratios},
      {6, "factor-design error ratio", table2_ratio},
      {7, "ESS calibration", ess_calibration},
      {8, "rejections versus signal-to-noise", rejection_profile},
      {9, "prior density suite", prior_suite},
      {10, "CLI determinism", determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("threw: ") + e.what());
    }
    std::cout << (v.passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
              << "): " << v.detail.str() << std::endl;
    failed += v.passed ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " acceptance criteria passed" << std::endl;
  return failed;
}
