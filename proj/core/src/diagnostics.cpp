#include "eslr/diagnostics.hpp"

#include "eslr/errors.hpp"

#include <algorithm>
#include <cmath>

namespace eslr {
namespace {

constexpr Index kMinSeriesLength = 10;

/// Centered copy and lag-0 autocovariance, validating the series.
std::pair<Eigen::VectorXd, double> center_series(const Eigen::Ref<const Eigen::VectorXd>& series) {
  if (series.size() < kMinSeriesLength) {
    raise(ErrorKind::DegenerateSeries, "series needs at least 10 values");
  }
  if (!series.allFinite()) raise(ErrorKind::NonFiniteInput, "series contains non-finite values");
  Eigen::VectorXd x = series.array() - series.mean();
  const double gamma0 = x.squaredNorm() / static_cast<double>(x.size());
  if (!(gamma0 > 0.0)) raise(ErrorKind::DegenerateSeries, "series has zero variance");
  return {std::move(x), gamma0};
}

double autocov(const Eigen::VectorXd& x, Index lag) {
  const Index n = x.size();
  return x.head(n - lag).dot(x.tail(n - lag)) / static_cast<double>(n);
}

}  // namespace

std::vector<double> autocorrelation(const Eigen::Ref<const Eigen::VectorXd>& series,
                                    std::size_t max_lag) {
  const auto [x, gamma0] = center_series(series);
  const auto last = std::min<Index>(static_cast<Index>(max_lag), x.size() - 1);
  std::vector<double> rho(max_lag + 1, 0.0);
  for (Index k = 0; k <= last; ++k) rho[static_cast<std::size_t>(k)] = autocov(x, k) / gamma0;
  return rho;
}

double effective_sample_size(const Eigen::Ref<const Eigen::VectorXd>& series) {
  const auto [x, gamma0] = center_series(series);
  const Index n = x.size();

  // Sum of Gamma_m = rho_{2m} + rho_{2m+1} over the initial positive run.
  double pair_sum = 0.0;
  for (Index lag = 0; lag + 1 < n; lag += 2) {
    const double gamma_m = (autocov(x, lag) + autocov(x, lag + 1)) / gamma0;
    if (!(gamma_m > 0.0)) break;
    pair_sum += gamma_m;
  }
  const double tau = 2.0 * pair_sum - 1.0;
  const auto total = static_cast<double>(n);
  if (!(tau > 0.0)) return total;
  return std::min(total, total / tau);
}

double estimation_error(const Eigen::Ref<const Eigen::VectorXd>& beta_means,
                        const Eigen::Ref<const Eigen::VectorXd>& beta_true) {
  if (beta_means.size() != beta_true.size()) {
    raise(ErrorKind::BadShape, "estimate and truth must have equal length");
  }
  const double denom = beta_true.squaredNorm();
  if (!(denom > 0.0)) raise(ErrorKind::ZeroTruth, "true coefficients are all zero");
  return std::sqrt((beta_means - beta_true).squaredNorm() / denom);
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) raise(ErrorKind::InvalidArgument, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ChainSummary summarize(const DrawsMatrix& draws, const std::optional<Eigen::VectorXd>& beta_true) {
  const Eigen::MatrixXd& d = draws.draws;
  if (d.rows() < 1) raise(ErrorKind::InvalidArgument, "no draws to summarize");

  ChainSummary out;
  out.wall_time_seconds = draws.wall_time_seconds;
  out.rejections_per_iteration = draws.rejections_per_iteration();

  std::vector<double> beta_ess;
  const auto rows = static_cast<double>(d.rows());
  for (Index c = 0; c < d.cols(); ++c) {
    CoordinateSummary s;
    const auto col = d.col(c);
    s.mean = col.mean();
    s.sd = d.rows() > 1 ? std::sqrt((col.array() - s.mean).square().sum() / (rows - 1.0)) : 0.0;
    std::vector<double> values(col.data(), col.data() + col.size());
    s.q025 = quantile(values, 0.025);
    s.q975 = quantile(std::move(values), 0.975);
    try {
      s.ess = effective_sample_size(col);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateSeries) throw;
    }
    if (c < draws.p && s.ess) beta_ess.push_back(*s.ess);
    out.columns.push_back(s);
  }

  if (!beta_ess.empty()) {
    out.min_ess = *std::min_element(beta_ess.begin(), beta_ess.end());
    std::vector<double> sorted = beta_ess;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    out.median_ess = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    if (draws.wall_time_seconds > 0.0) out.ess_per_second = *out.min_ess / draws.wall_time_seconds;
  }
  if (beta_true) {
    Eigen::VectorXd means(draws.p);
    for (Index j = 0; j < draws.p; ++j) means(j) = out.columns[static_cast<std::size_t>(j)].mean;
    out.error = estimation_error(means, *beta_true);
  }
  return out;
}

}  // namespace eslr
