#include "eslr/oracles.hpp"

#include "eslr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace eslr {
namespace {

struct Grid {
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> weights;
};

Grid make_grid(const QuadratureSpec& spec) {
  Grid g;
  for (const auto& axis : spec.axes) {
    std::vector<double> x(static_cast<std::size_t>(axis.points));
    std::vector<double> w(x.size());
    const double h = (axis.hi - axis.lo) / static_cast<double>(axis.points - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = axis.lo + h * static_cast<double>(i);
      w[i] = (i == 0 || i + 1 == x.size()) ? 0.5 * h : h;
    }
    g.nodes.push_back(std::move(x));
    g.weights.push_back(std::move(w));
  }
  return g;
}

double log_likelihood_kernel(const Eigen::MatrixXd& xtx, const Eigen::VectorXd& xty,
                             const Eigen::VectorXd& beta, double sigma2) {
  return -(beta.dot(xtx * beta) - 2.0 * beta.dot(xty)) / (2.0 * sigma2);
}

/// Unnormalized posterior mass at each grid node, flattened row-major over
/// the axes, scaled so the largest node has log weight zero.
std::vector<double> node_mass(const Dataset& data, const PriorSpec& prior, double sigma2,
                              double lambda, const Grid& g) {
  const Index p = data.p();
  const Eigen::MatrixXd xtx = data.X.transpose() * data.X;
  const Eigen::VectorXd xty = data.X.transpose() * data.y;

  const std::size_t n0 = g.nodes[0].size();
  const std::size_t n1 = p == 2 ? g.nodes[1].size() : 1;
  std::vector<double> logs(n0 * n1);
  Eigen::VectorXd beta(p);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      beta(0) = g.nodes[0][i];
      if (p == 2) beta(1) = g.nodes[1][j];
      const double lp = log_likelihood_kernel(xtx, xty, beta, sigma2) + log_prior(prior, beta, lambda);
      logs[i * n1 + j] = lp;
      top = std::max(top, lp);
    }
  }
  if (!std::isfinite(top)) raise(ErrorKind::GridTooCoarse, "posterior has no mass on the grid");

  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      const double w = g.weights[0][i] * (p == 2 ? g.weights[1][j] : 1.0);
      logs[i * n1 + j] = w * std::exp(logs[i * n1 + j] - top);
    }
  }
  return logs;
}

void check_boundary(const std::vector<double>& mass, std::size_t n0, std::size_t n1, double total) {
  double edge = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      const bool on_edge = i == 0 || i + 1 == n0 || (n1 > 1 && (j == 0 || j + 1 == n1));
      if (on_edge) edge += mass[i * n1 + j];
    }
  }
  if (edge / total > kMaxBoundaryMass) {
    raise(ErrorKind::GridTooCoarse, "posterior mass on the grid boundary is " +
                                        std::to_string(edge / total) + "; widen the grid");
  }
}

}  // namespace

GaussianPosterior conjugate_ridge_posterior(const SufficientStatistics& stats, double lambda,
                                            double sigma2) {
  if (!(lambda > 0.0) || !(sigma2 > 0.0)) {
    raise(ErrorKind::InvalidArgument, "lambda and sigma2 must be positive");
  }
  Eigen::MatrixXd precision = stats.xtx;
  precision.diagonal().array() += sigma2 / (lambda * lambda);
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    raise(ErrorKind::CholeskyFailure, "ridge posterior precision is not positive definite");
  }
  GaussianPosterior post;
  post.mean = llt.solve(stats.xty);
  post.covariance = sigma2 * llt.solve(Eigen::MatrixXd::Identity(stats.p, stats.p));
  return post;
}

QuadratureSpec QuadratureSpec::around_likelihood(const Dataset& data, double sigma2, double width,
                                                 Index points) {
  const Eigen::MatrixXd xtx = data.X.transpose() * data.X;
  Eigen::LLT<Eigen::MatrixXd> llt(xtx);
  if (llt.info() != Eigen::Success) {
    raise(ErrorKind::SingularGram, "quadrature grid needs a full-rank design");
  }
  const Eigen::VectorXd center = llt.solve(data.X.transpose() * data.y);
  const Eigen::MatrixXd cov = sigma2 * llt.solve(Eigen::MatrixXd::Identity(data.p(), data.p()));
  QuadratureSpec spec;
  for (Index j = 0; j < data.p(); ++j) {
    const double sd = std::sqrt(cov(j, j));
    spec.axes.push_back({center(j) - width * sd, center(j) + width * sd, points});
  }
  return spec;
}

void QuadratureSpec::validate(Index p) const {
  if (p < 1 || p > 2) raise(ErrorKind::InvalidArgument, "quadrature oracle supports p <= 2 only");
  if (static_cast<Index>(axes.size()) != p) {
    raise(ErrorKind::InvalidArgument, "need one quadrature axis per coefficient");
  }
  for (const auto& a : axes) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.hi > a.lo)) {
      raise(ErrorKind::InvalidArgument, "quadrature bounds must be finite and increasing");
    }
    if (a.points < 101) raise(ErrorKind::InvalidArgument, "quadrature needs at least 101 points");
  }
}

PosteriorMoments quadrature_posterior_moments(const Dataset& data, const PriorSpec& prior,
                                              double sigma2, double lambda,
                                              const QuadratureSpec& grid) {
  const Index p = data.p();
  grid.validate(p);
  const Grid g = make_grid(grid);
  const std::vector<double> mass = node_mass(data, prior, sigma2, lambda, g);
  const std::size_t n0 = g.nodes[0].size();
  const std::size_t n1 = p == 2 ? g.nodes[1].size() : 1;

  double total = 0.0;
  Eigen::VectorXd m1 = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd m2 = Eigen::VectorXd::Zero(p);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      const double w = mass[i * n1 + j];
      total += w;
      m1(0) += w * g.nodes[0][i];
      m2(0) += w * g.nodes[0][i] * g.nodes[0][i];
      if (p == 2) {
        m1(1) += w * g.nodes[1][j];
        m2(1) += w * g.nodes[1][j] * g.nodes[1][j];
      }
    }
  }
  check_boundary(mass, n0, n1, total);

  PosteriorMoments out;
  out.mean = m1 / total;
  out.variance = (m2 / total).array() - out.mean.array().square();
  return out;
}

std::vector<double> quadrature_posterior_cdf(const Dataset& data, const PriorSpec& prior,
                                             double sigma2, double lambda,
                                             const QuadratureSpec& grid,
                                             const std::vector<double>& at) {
  if (data.p() != 1) raise(ErrorKind::InvalidArgument, "posterior CDF oracle needs p = 1");
  grid.validate(1);
  const Grid g = make_grid(grid);
  const auto& x = g.nodes[0];
  // Undo the endpoint halving: the cumulative trapezoid works on densities.
  std::vector<double> dens = node_mass(data, prior, sigma2, lambda, g);
  for (std::size_t i = 0; i < x.size(); ++i) dens[i] /= g.weights[0][i];

  std::vector<double> cdf(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    cdf[i] = cdf[i - 1] + 0.5 * (dens[i] + dens[i - 1]) * (x[i] - x[i - 1]);
  }
  const double total = cdf.back();

  std::vector<double> out;
  out.reserve(at.size());
  for (double t : at) {
    if (t <= x.front()) {
      out.push_back(0.0);
      continue;
    }
    if (t >= x.back()) {
      out.push_back(1.0);
      continue;
    }
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const auto i = static_cast<std::size_t>(it - x.begin());
    const double frac = (t - x[i - 1]) / (x[i] - x[i - 1]);
    out.push_back((cdf[i - 1] + frac * (cdf[i] - cdf[i - 1])) / total);
  }
  return out;
}

}  // namespace eslr
