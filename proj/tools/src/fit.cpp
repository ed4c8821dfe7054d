#include "eslr_cli/cli.hpp"

#include <fstream>

namespace eslr::cli {
namespace {

std::string or_na(const std::optional<double>& v) { return v ? csv::format(*v) : "NA"; }

}  // namespace

CoordinatePrior coordinate_prior(const std::string& family, double q) {
  switch (parse_prior_family(family)) {
    case PriorFamily::Flat: return CoordinatePrior::flat();
    case PriorFamily::Horseshoe: return CoordinatePrior::horseshoe();
    case PriorFamily::Laplace: return CoordinatePrior::laplace();
    case PriorFamily::Ridge: return CoordinatePrior::ridge();
    case PriorFamily::SharkFin: return CoordinatePrior::sharkfin(q);
    case PriorFamily::NonLocalCauchyMix: return CoordinatePrior::nonlocal();
    case PriorFamily::UserDefined: break;
  }
  raise(ErrorKind::ConfigError, "prior '" + family + "' is not available from the command line");
}

FitResult fit(const FitOptions& o) {
  const csv::Table table = csv::read_file(o.data_path);
  const Index response = table.column(o.response);

  FitResult result;
  std::vector<Index> features;
  if (o.intercept) result.names.push_back("intercept");
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (static_cast<Index>(j) == response) continue;
    features.push_back(static_cast<Index>(j));
    result.names.push_back(table.header[j]);
  }
  const Index n = table.values.rows();
  const auto p = static_cast<Index>(result.names.size());
  if (p == 0) raise(ErrorKind::BadShape, "no regressor columns besides the response");

  Eigen::MatrixXd X(n, p);
  Index col = 0;
  if (o.intercept) X.col(col++).setOnes();
  for (Index j : features) X.col(col++) = table.values.col(j);
  const Dataset data = make_dataset(std::move(X), table.values.col(response));

  std::vector<CoordinatePrior> coords(static_cast<std::size_t>(p), coordinate_prior(o.prior, o.q));
  if (o.intercept) coords.front() = CoordinatePrior::flat();
  const PriorSpec prior(std::move(coords), !o.fix_lambda);

  SamplerConfig config;
  config.n_draws = o.draws;
  config.burn_in = o.burnin;
  if (o.block_size > 1) config.blocking = Blocking::contiguous(p, o.block_size);
  else if (o.block_size < 1) raise(ErrorKind::ConfigError, "--block-size must be at least 1");
  config.ridge_c = o.ridge_c;
  config.sample_sigma2 = !o.fix_sigma2;
  config.sample_lambda = !o.fix_lambda;
  config.sigma2_init = o.sigma2;
  config.lambda_init = o.lambda;
  config.seed = o.seed;

  result.draws = run_chain(data, prior, config);
  result.summary = summarize(result.draws);

  if (!o.truth_path.empty()) {
    const csv::Table truth = csv::read_file(o.truth_path);
    if (truth.values.rows() < 1) raise(ErrorKind::ParseError, "truth file has no data row");
    std::vector<double> est, tru;
    for (Index j = 0; j < p; ++j) {
      const std::string& name = result.names[static_cast<std::size_t>(j)];
      if (o.intercept && j == 0) continue;
      est.push_back(result.summary.columns[static_cast<std::size_t>(j)].mean);
      tru.push_back(truth.values(0, truth.column("beta_" + name)));
    }
    result.summary.error = estimation_error(Eigen::Map<Eigen::VectorXd>(est.data(), static_cast<Index>(est.size())),
                                            Eigen::Map<Eigen::VectorXd>(tru.data(), static_cast<Index>(tru.size())));
  }
  return result;
}

void write_draws(const std::string& path, const FitResult& r) {
  std::vector<std::string> header;
  for (const auto& name : r.names) header.push_back("beta_" + name);
  header.push_back("sigma2");
  header.push_back("lambda");
  csv::write_file(path, header, r.draws.draws);
}

void write_summary(const std::string& path, const FitResult& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::ParseError, "cannot open '" + path + "' for writing");
  csv::write_row(out, {"parameter", "mean", "sd", "q2.5", "q97.5", "ESS"});
  for (std::size_t c = 0; c < r.summary.columns.size(); ++c) {
    const auto& s = r.summary.columns[c];
    std::string name = c < r.names.size() ? "beta_" + r.names[c] : c == r.names.size() ? "sigma2" : "lambda";
    csv::write_row(out, {name, csv::format(s.mean), csv::format(s.sd), csv::format(s.q025),
                         csv::format(s.q975), or_na(s.ess)});
  }
  csv::write_row(out, {"ess_per_second", or_na(r.summary.ess_per_second), "", "", "", ""});
  csv::write_row(out, {"wall_time", csv::format(r.summary.wall_time_seconds), "", "", "", ""});
  csv::write_row(out, {"rejections_per_iteration", csv::format(r.summary.rejections_per_iteration),
                       "", "", "", ""});
  if (r.summary.error) {
    csv::write_row(out, {"estimation_error", csv::format(*r.summary.error), "", "", "", ""});
  }
  if (!out) raise(ErrorKind::ParseError, "failed writing '" + path + "'");
}

}  // namespace eslr::cli
