#pragma once

#include "eslr/priors.hpp"
#include "eslr/regression_model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace eslr {

/// Ground truth for sampler checks. Nothing here shares code with the
/// sampler beyond prior evaluation and the sufficient statistics.
struct GaussianPosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Closed-form posterior under iid N(0, lambda^2) coefficients at fixed
/// sigma2: precision (X^T X + (sigma2 / lambda^2) I) / sigma2. Always uses
/// the unadjusted X^T X, whatever ridge constant the statistics carry.
GaussianPosterior conjugate_ridge_posterior(const SufficientStatistics& stats, double lambda,
                                            double sigma2);

struct QuadratureAxis {
  double lo = 0.0;
  double hi = 0.0;
  Index points = 2001;
};

struct QuadratureSpec {
  std::vector<QuadratureAxis> axes;

  /// center +/- `width` flat-prior posterior sds per axis.
  static QuadratureSpec around_likelihood(const Dataset& data, double sigma2,
                                          double width = 10.0, Index points = 2001);
  void validate(Index p) const;
};

struct PosteriorMoments {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

/// Brute-force moments for p <= 2 by the trapezoid rule on a regular grid.
PosteriorMoments quadrature_posterior_moments(const Dataset& data, const PriorSpec& prior,
                                              double sigma2, double lambda,
                                              const QuadratureSpec& grid);

/// Boundary-mass cutoff for GridTooCoarse.
inline constexpr double kMaxBoundaryMass = 1e-6;

/// Posterior CDF of a p = 1 problem at each point of `at`, by the same grid.
std::vector<double> quadrature_posterior_cdf(const Dataset& data, const PriorSpec& prior,
                                             double sigma2, double lambda,
                                             const QuadratureSpec& grid,
                                             const std::vector<double>& at);

}  // namespace eslr
