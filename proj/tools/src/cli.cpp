#include "eslr_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>

namespace eslr::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

/// key=value lines become --key=value tokens. Blank lines and # comments
/// are skipped.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      raise(ErrorKind::ParseError,
            path + ": line " + std::to_string(line_no) + ": expected key=value");
    }
    tokens.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  return tokens;
}

/// Pulls --config out of the arguments and splices its settings in right
/// after the subcommand, so anything on the command line comes later and wins.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    std::size_t erase = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      erase = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      erase = 1;
    }
    if (erase == 0) continue;
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + erase));
    const auto tokens = config_tokens(path);
    const std::size_t at = args.empty() ? 0 : 1;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
    break;
  }
  return args;
}

void add_sampler_flags(CLI::App* app, std::size_t& draws, std::optional<std::size_t>& burnin,
                       std::uint64_t& seed, std::optional<double>& ridge_c) {
  app->add_option("--draws", draws, "Total iterations, burn-in included")->capture_default_str();
  app->add_option("--burnin", burnin, "Iterations discarded at the start (default 40% of --draws)");
  app->add_option("--seed", seed, "Random seed")->capture_default_str();
  app->add_option("--ridge-c", ridge_c, "Ridge constant c for rank-deficient designs");
}

}  // namespace

std::size_t default_burnin(std::size_t draws) noexcept { return draws * 2 / 5; }

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::BadShape:
    case ErrorKind::NonFiniteInput:
    case ErrorKind::ConfigError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ZeroTruth:
    case ErrorKind::ZeroSignal:
      return kExitInputError;
    default:
      return kExitSamplerError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptical slice sampling for Bayesian linear regression", "eslr"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  FitOptions fo;
  auto* fit_cmd = app.add_subcommand("fit", "Sample the posterior for a CSV dataset");
  fit_cmd->add_option("--data", fo.data_path, "Input CSV with a header row")->required();
  fit_cmd->add_option("--response", fo.response, "Response column")->capture_default_str();
  fit_cmd->add_flag("--intercept", fo.intercept, "Prepend a ones column with a flat prior");
  fit_cmd->add_option("--prior", fo.prior, "flat|horseshoe|laplace|ridge|sharkfin|nonlocal")
      ->capture_default_str();
  fit_cmd->add_option("--q", fo.q, "Shark-fin prior mass below zero")->capture_default_str();
  fit_cmd->add_option("--lambda", fo.lambda, "Initial (or fixed) global scale")
      ->capture_default_str();
  fit_cmd->add_flag("--fix-lambda", fo.fix_lambda, "Hold lambda at --lambda");
  fit_cmd->add_flag("--fix-sigma2", fo.fix_sigma2, "Hold sigma2 at its initial value");
  fit_cmd->add_option("--sigma2", fo.sigma2, "Initial (or fixed) noise variance");
  fit_cmd->add_option("--block-size", fo.block_size, "Coefficients per Gibbs block")
      ->capture_default_str();
  std::optional<std::size_t> fit_burnin;
  add_sampler_flags(fit_cmd, fo.draws, fit_burnin, fo.seed, fo.ridge_c);
  fit_cmd->add_option("--draws-out", fo.draws_out, "Draws CSV")->capture_default_str();
  fit_cmd->add_option("--summary-out", fo.summary_out, "Summary CSV")->capture_default_str();
  fit_cmd->add_option("--truth", fo.truth_path, "Truth CSV from simulate; adds the error row");

  SimulateOptions so;
  std::string sim_structure = "independent";
  Index sim_sparsity = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Write a synthetic dataset and its truth");
  sim_cmd->add_option("--p", so.dgp.p, "Coefficients")->capture_default_str();
  sim_cmd->add_option("--n", so.dgp.n, "Observations")->capture_default_str();
  sim_cmd->add_option("--structure", sim_structure, "independent|factor")->capture_default_str();
  sim_cmd->add_option("--kappa", so.dgp.kappa, "Noise multiplier")->capture_default_str();
  sim_cmd->add_option("--sparsity", sim_sparsity, "Nonzero coefficients (default ceil(sqrt(p)))");
  sim_cmd->add_option("--seed", so.dgp.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--out", so.out, "Data CSV")->capture_default_str();
  sim_cmd->add_option("--truth-out", so.truth_out, "Truth CSV")->capture_default_str();

  BenchmarkGrid grid;
  std::vector<std::string> bench_structures{"independent"};
  Index bench_sparsity = 0;
  std::string bench_out = "benchmark.csv";
  auto* bench_cmd = app.add_subcommand("benchmark", "Simulation sweep with error and ESS columns");
  bench_cmd->add_option("--prior", grid.priors, "Comma-separated prior families")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  bench_cmd->add_option("--q", grid.q, "Shark-fin prior mass below zero")->capture_default_str();
  bench_cmd->add_option("--p-list", grid.p_list, "Comma-separated p values")->delimiter(',');
  bench_cmd->add_option("--n-mult-list", grid.n_mult_list, "Comma-separated n/p ratios")
      ->delimiter(',');
  bench_cmd->add_option("--kappa-list", grid.kappa_list, "Comma-separated kappa values")
      ->delimiter(',');
  bench_cmd->add_option("--structure", bench_structures, "independent and/or factor")
      ->delimiter(',');
  bench_cmd->add_option("--replicates", grid.replicates, "Datasets per cell")
      ->capture_default_str();
  bench_cmd->add_option("--sparsity", bench_sparsity, "Nonzero coefficients");
  std::optional<std::size_t> bench_burnin;
  add_sampler_flags(bench_cmd, grid.draws, bench_burnin, grid.seed, grid.ridge_c);
  bench_cmd->add_option("--out", bench_out, "Results CSV")->capture_default_str();

  std::size_t diag_draws = 20000;
  std::uint64_t diag_seed = 7;
  bool broken_prior = false;
  auto* diag_cmd = app.add_subcommand("diagnose", "Check the sampler against exact oracles");
  diag_cmd->add_option("--draws", diag_draws, "Iterations per chain")->capture_default_str();
  diag_cmd->add_option("--seed", diag_seed, "Random seed")->capture_default_str();
  diag_cmd->add_flag("--broken-prior", broken_prior)->group("");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    }

    if (*fit_cmd) {
      fo.burnin = fit_burnin.value_or(default_burnin(fo.draws));
      const FitResult r = fit(fo);
      write_draws(fo.draws_out, r);
      write_summary(fo.summary_out, r);
      out << "wrote " << r.draws.draws.rows() << " draws to " << fo.draws_out << "\n";
      if (r.summary.min_ess) out << "min ESS " << *r.summary.min_ess << "\n";
      if (r.summary.error) out << "estimation error " << *r.summary.error << "\n";
      return kExitOk;
    }

    if (*sim_cmd) {
      so.dgp.regressors = parse_regressor_kind(sim_structure);
      if (sim_sparsity > 0) so.dgp.sparsity = sim_sparsity;
      simulate_to_files(so);
      out << "wrote " << so.out << " and " << so.truth_out << "\n";
      return kExitOk;
    }

    if (*bench_cmd) {
      grid.burnin = bench_burnin.value_or(default_burnin(grid.draws));
      grid.structures.clear();
      for (const auto& s : bench_structures) grid.structures.push_back(parse_regressor_kind(s));
      for (const auto& prior : grid.priors) coordinate_prior(prior, grid.q);
      if (bench_sparsity > 0) grid.sparsity = bench_sparsity;
      std::ofstream file(bench_out, std::ios::binary);
      if (!file) raise(ErrorKind::ParseError, "cannot open '" + bench_out + "' for writing");
      write_benchmark_header(file);
      run_benchmark(grid, [&](const BenchmarkRow& row) {
        write_benchmark_row(file, row);
        file.flush();
        out << row.prior << " p=" << row.p << " n=" << row.n << " kappa=" << row.kappa << " "
            << to_string(row.structure) << " rep " << row.replicate
            << ": error ratio " << row.slice_error / row.ols_error << "\n";
      });
      return kExitOk;
    }

    const auto checks = run_diagnostics(diag_draws, diag_seed, broken_prior);
    bool all = true;
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "\n";
      all = all && c.passed;
    }
    return all ? kExitOk : kExitDiagnoseFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSamplerError;
  }
}

}  // namespace eslr::cli
