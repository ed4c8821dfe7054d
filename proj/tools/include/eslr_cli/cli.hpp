#pragma once

#include "eslr/eslr.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eslr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitDiagnoseFailure = 1,
  kExitInputError = 2,
  kExitSamplerError = 3,
};

/// Input problems map to 2, numerical or sampler problems to 3.
int exit_code_for(ErrorKind kind) noexcept;

/// 40% of the iterations, i.e. 20,000 of 50,000.
std::size_t default_burnin(std::size_t draws) noexcept;

/// Entry point shared by the binary and the tests. argv[0] is ignored.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ---- fit ----------------------------------------------------------------

struct FitOptions {
  std::string data_path;
  std::string response = "y";
  bool intercept = false;
  std::string prior = "horseshoe";
  double q = 0.5;
  double lambda = 1.0;
  bool fix_lambda = false;
  bool fix_sigma2 = false;
  std::optional<double> sigma2;
  std::size_t draws = 10000;
  std::size_t burnin = 4000;
  Index block_size = 1;
  std::optional<double> ridge_c;
  std::uint64_t seed = 20180524;
  std::string draws_out = "draws.csv";
  std::string summary_out = "summary.csv";
  std::string truth_path;
};

struct FitResult {
  std::vector<std::string> names;
  DrawsMatrix draws;
  ChainSummary summary;
};

FitResult fit(const FitOptions& options);
void write_draws(const std::string& path, const FitResult& result);
void write_summary(const std::string& path, const FitResult& result);

/// Coordinate prior for a CLI family name.
CoordinatePrior coordinate_prior(const std::string& family, double q);

// ---- simulate -----------------------------------------------------------

struct SimulateOptions {
  DgpConfig dgp;
  std::string out = "data.csv";
  std::string truth_out = "truth.csv";
};

void simulate_to_files(const SimulateOptions& options);

// ---- benchmark ----------------------------------------------------------

struct BenchmarkGrid {
  std::vector<std::string> priors{"horseshoe"};
  double q = 0.5;
  std::vector<Index> p_list{100};
  std::vector<double> n_mult_list{10.0};
  std::vector<double> kappa_list{1.0};
  std::vector<RegressorKind> structures{RegressorKind::Independent};
  int replicates = 10;
  std::size_t draws = 50000;
  std::size_t burnin = 20000;
  std::optional<Index> sparsity;
  std::optional<double> ridge_c;
  std::uint64_t seed = 1;
};

struct BenchmarkRow {
  std::string prior;
  Index p = 0;
  Index n = 0;
  double kappa = 0.0;
  RegressorKind structure = RegressorKind::Independent;
  int replicate = 0;
  double ols_error = 0.0;
  double slice_error = 0.0;
  double min_ess = 0.0;
  double median_ess = 0.0;
  double ess_per_second = 0.0;
  double rejections_per_iter = 0.0;
  double rejections_per_block_step = 0.0;
  double wall_time = 0.0;
};

/// Dataset seed for replicate r is seed + r; the chain uses a seed derived
/// from it so data and sampler never share a stream.
std::uint64_t chain_seed(std::uint64_t dataset_seed) noexcept;

BenchmarkRow benchmark_one(const std::string& prior, Index p, Index n, double kappa,
                           RegressorKind structure, int replicate, const BenchmarkGrid& grid);
std::vector<BenchmarkRow> run_benchmark(const BenchmarkGrid& grid,
                                        const std::function<void(const BenchmarkRow&)>& on_row = {});
void write_benchmark_header(std::ostream& out);
void write_benchmark_row(std::ostream& out, const BenchmarkRow& row);

// ---- diagnose -----------------------------------------------------------

struct DiagnoseCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle agreement suite on small built-in problems. `broken_prior` makes
/// the sampler use a deliberately wrong prior while the oracles keep the
/// right one, to show the harness can fail.
std::vector<DiagnoseCheck> run_diagnostics(std::size_t draws, std::uint64_t seed,
                                           bool broken_prior);

}  // namespace eslr::cli
