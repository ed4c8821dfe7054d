#include "eslr/regression_model.hpp"

#include "eslr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eslr {

Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXd y) {
  if (X.rows() < 1 || X.cols() < 1) {
    raise(ErrorKind::BadShape, "design matrix must have at least one row and one column");
  }
  if (X.rows() != y.size()) {
    raise(ErrorKind::BadShape, "X has " + std::to_string(X.rows()) + " rows but y has " +
                                   std::to_string(y.size()) + " entries");
  }
  if (!X.allFinite() || !y.allFinite()) {
    raise(ErrorKind::NonFiniteInput, "X and y must contain only finite values");
  }
  return Dataset{std::move(X), std::move(y)};
}

double SufficientStatistics::residual_sum_of_squares(const Eigen::VectorXd& beta) const {
  const double s = yty - 2.0 * beta.dot(xty) + beta.dot(xtx * beta);
  return std::max(s, 0.0);
}

SufficientStatistics compute_sufficient_stats(const Dataset& data, std::optional<double> ridge_c) {
  if (!data.X.allFinite() || !data.y.allFinite()) {
    raise(ErrorKind::NonFiniteInput, "X and y must contain only finite values");
  }
  if (data.X.rows() != data.y.size() || data.X.rows() < 1 || data.X.cols() < 1) {
    raise(ErrorKind::BadShape, "inconsistent dataset dimensions");
  }
  if (ridge_c && !(*ridge_c > 0.0 && std::isfinite(*ridge_c))) {
    raise(ErrorKind::InvalidArgument, "ridge_c must be a positive finite number");
  }

  SufficientStatistics stats;
  stats.n = data.n();
  stats.p = data.p();
  stats.xtx = Eigen::MatrixXd(stats.p, stats.p);
  stats.xtx.setZero();
  stats.xtx.selfadjointView<Eigen::Lower>().rankUpdate(data.X.transpose());
  stats.xtx.triangularView<Eigen::StrictlyUpper>() = stats.xtx.transpose();
  stats.xty = data.X.transpose() * data.y;
  stats.yty = data.y.squaredNorm();
  stats.ridge_c = ridge_c;

  stats.gram = stats.xtx;
  if (ridge_c) {
    stats.gram.diagonal().array() += 1.0 / *ridge_c;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(stats.xtx, Eigen::EigenvaluesOnly);
    const double largest = eig.eigenvalues().maxCoeff();
    const double smallest = eig.eigenvalues().minCoeff();
    if (!(largest > 0.0) || smallest / largest < kSingularityThreshold) {
      raise(ErrorKind::SingularGram,
            "X^T X is numerically singular (eigenvalue ratio " +
                std::to_string(largest > 0.0 ? smallest / largest : 0.0) +
                "); supply a ridge constant");
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(stats.gram);
  if (llt.info() != Eigen::Success) {
    raise(ErrorKind::SingularGram, "gram matrix is not positive definite");
  }
  stats.center = llt.solve(stats.xty);
  return stats;
}

Blocking::Blocking(std::vector<std::vector<Index>> blocks, Index p)
    : blocks_(std::move(blocks)), p_(p) {
  if (p < 1) raise(ErrorKind::InvalidArgument, "blocking dimension must be positive");
  std::vector<int> seen(static_cast<std::size_t>(p), 0);
  for (const auto& b : blocks_) {
    if (b.empty()) raise(ErrorKind::InvalidArgument, "blocks must be nonempty");
    for (Index j : b) {
      if (j < 0 || j >= p) {
        raise(ErrorKind::InvalidArgument, "block index " + std::to_string(j) + " out of range");
      }
      if (seen[static_cast<std::size_t>(j)]++) {
        raise(ErrorKind::InvalidArgument, "index " + std::to_string(j) + " appears in two blocks");
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    raise(ErrorKind::InvalidArgument, "blocks do not cover every coefficient");
  }
}

Blocking Blocking::singletons(Index p) {
  std::vector<std::vector<Index>> blocks;
  blocks.reserve(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) blocks.push_back({j});
  return Blocking(std::move(blocks), p);
}

Blocking Blocking::single_block(Index p) { return contiguous(p, p); }

Blocking Blocking::contiguous(Index p, Index block_size) {
  if (block_size < 1) raise(ErrorKind::InvalidArgument, "block size must be positive");
  std::vector<std::vector<Index>> blocks;
  for (Index start = 0; start < p; start += block_size) {
    std::vector<Index> b;
    for (Index j = start; j < std::min(p, start + block_size); ++j) b.push_back(j);
    blocks.push_back(std::move(b));
  }
  return Blocking(std::move(blocks), p);
}

ConditionalCache build_conditional_cache(const SufficientStatistics& stats,
                                         const Blocking& blocking) {
  const Index p = stats.p;
  if (blocking.dimension() != p) {
    raise(ErrorKind::InvalidArgument, "blocking dimension does not match the regression");
  }

  std::vector<ConditionalBlock> out;
  out.reserve(blocking.size());
  std::vector<char> in_block(static_cast<std::size_t>(p));

  for (const auto& members : blocking.blocks()) {
    ConditionalBlock cb;
    cb.members = members;
    std::fill(in_block.begin(), in_block.end(), 0);
    for (Index j : members) in_block[static_cast<std::size_t>(j)] = 1;
    for (Index j = 0; j < p; ++j) {
      if (!in_block[static_cast<std::size_t>(j)]) cb.rest.push_back(j);
    }

    const auto m = static_cast<Index>(cb.members.size());
    const auto r = static_cast<Index>(cb.rest.size());
    Eigen::MatrixXd a_kk(m, m);
    Eigen::MatrixXd a_kr(m, r);
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < m; ++j) a_kk(i, j) = stats.gram(cb.members[i], cb.members[j]);
      for (Index j = 0; j < r; ++j) a_kr(i, j) = stats.gram(cb.members[i], cb.rest[j]);
    }

    Eigen::LLT<Eigen::MatrixXd> precision(a_kk);
    if (precision.info() != Eigen::Success) {
      raise(ErrorKind::CholeskyFailure, "block precision is not positive definite");
    }
    cb.weights = -precision.solve(a_kr);
    const Eigen::MatrixXd cov = precision.solve(Eigen::MatrixXd::Identity(m, m));
    Eigen::LLT<Eigen::MatrixXd> cov_llt(0.5 * (cov + cov.transpose()));
    if (cov_llt.info() != Eigen::Success) {
      raise(ErrorKind::CholeskyFailure, "conditional covariance is not positive definite");
    }
    cb.chol_unit = cov_llt.matrixL();
    if ((cb.chol_unit.diagonal().array() <= 0.0).any()) {
      raise(ErrorKind::CholeskyFailure, "conditional Cholesky factor has a nonpositive pivot");
    }

    cb.dense_weights = Eigen::MatrixXd::Zero(m, p);
    for (Index j = 0; j < r; ++j) cb.dense_weights.col(cb.rest[j]) = cb.weights.col(j);
    out.push_back(std::move(cb));
  }
  return ConditionalCache(std::move(out), p);
}

ConditionalParams conditional_params(const ConditionalCache& cache, std::size_t k,
                                     const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& center, double sigma2) {
  if (!(sigma2 > 0.0)) raise(ErrorKind::InvalidArgument, "sigma2 must be positive");
  if (beta.size() != cache.dimension() || center.size() != cache.dimension()) {
    raise(ErrorKind::BadShape, "beta and center must have length p");
  }
  const ConditionalBlock& cb = cache.block(k);
  const auto m = static_cast<Index>(cb.members.size());

  ConditionalParams out;
  out.mean.resize(m);
  const Eigen::VectorXd shift = cb.dense_weights * (beta - center);
  for (Index i = 0; i < m; ++i) out.mean(i) = center(cb.members[i]) + shift(i);
  out.scaled_chol = std::sqrt(sigma2) * cb.chol_unit;
  return out;
}

}  // namespace eslr
