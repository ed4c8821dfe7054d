#include "eslr_cli/cli.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace eslr::cli {

std::uint64_t chain_seed(std::uint64_t dataset_seed) noexcept {
  // splitmix64 finalizer
  std::uint64_t z = dataset_seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BenchmarkRow benchmark_one(const std::string& prior, Index p, Index n, double kappa,
                           RegressorKind structure, int replicate, const BenchmarkGrid& grid) {
  DgpConfig dgp;
  dgp.p = p;
  dgp.n = n;
  dgp.regressors = structure;
  dgp.kappa = kappa;
  dgp.sparsity = grid.sparsity;
  dgp.seed = grid.seed + static_cast<std::uint64_t>(replicate);
  const SimulatedDataset sim = simulate(dgp);

  BenchmarkRow row;
  row.prior = prior;
  row.p = p;
  row.n = n;
  row.kappa = kappa;
  row.structure = structure;
  row.replicate = replicate;
  row.ols_error = std::numeric_limits<double>::quiet_NaN();
  try {
    row.ols_error = estimation_error(compute_sufficient_stats(sim.data).center, sim.beta);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularGram) throw;
  }

  SamplerConfig config;
  config.n_draws = grid.draws;
  config.burn_in = grid.burnin;
  config.ridge_c = grid.ridge_c;
  config.seed = chain_seed(dgp.seed);
  const DrawsMatrix draws =
      run_chain(sim.data, PriorSpec::uniform(p, coordinate_prior(prior, grid.q), true), config);
  const ChainSummary s = summarize(draws, sim.beta);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.slice_error = *s.error;
  row.min_ess = s.min_ess.value_or(nan);
  row.median_ess = s.median_ess.value_or(nan);
  row.ess_per_second = s.ess_per_second.value_or(nan);
  row.rejections_per_iter = draws.rejections_per_iteration();
  row.rejections_per_block_step = draws.rejections_per_block_step();
  row.wall_time = draws.wall_time_seconds;
  return row;
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkGrid& grid,
                                        const std::function<void(const BenchmarkRow&)>& on_row) {
  if (grid.replicates < 1) raise(ErrorKind::ConfigError, "--replicates must be at least 1");
  std::vector<BenchmarkRow> rows;
  for (const auto& prior : grid.priors) {
    for (const auto structure : grid.structures) {
      for (const Index p : grid.p_list) {
        for (const double mult : grid.n_mult_list) {
          const auto n = static_cast<Index>(std::llround(mult * static_cast<double>(p)));
          for (const double kappa : grid.kappa_list) {
            for (int r = 0; r < grid.replicates; ++r) {
              rows.push_back(benchmark_one(prior, p, n, kappa, structure, r, grid));
              if (on_row) on_row(rows.back());
            }
          }
        }
      }
    }
  }
  return rows;
}

void write_benchmark_header(std::ostream& out) {
  csv::write_row(out, {"prior", "p", "n", "kappa", "structure", "replicate", "ols_error",
                       "slice_error", "min_ess", "median_ess", "ess_per_second",
                       "rejections_per_iter", "wall_time"});
}

void write_benchmark_row(std::ostream& out, const BenchmarkRow& r) {
  csv::write_row(out, {r.prior, std::to_string(r.p), std::to_string(r.n), csv::format(r.kappa),
                       std::string(to_string(r.structure)), std::to_string(r.replicate),
                       csv::format(r.ols_error), csv::format(r.slice_error), csv::format(r.min_ess),
                       csv::format(r.median_ess), csv::format(r.ess_per_second),
                       csv::format(r.rejections_per_iter), csv::format(r.wall_time)});
}

}  // namespace eslr::cli
