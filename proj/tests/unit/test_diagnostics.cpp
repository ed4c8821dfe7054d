#include "unit/test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace eslr;

namespace {

Eigen::VectorXd ar1(Index n, double rho, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Eigen::VectorXd x(n);
  x(0) = z(rng) / std::sqrt(1.0 - rho * rho);
  for (Index i = 1; i < n; ++i) x(i) = rho * x(i - 1) + z(rng);
  return x;
}

}  // namespace

TEST_CASE("autocorrelation") {
  const auto x = ar1(100000, 0.5, 1);
  const auto rho = autocorrelation(x, 5);
  REQUIRE(rho.size() == 6);
  CHECK(rho[0] == 1.0);
  CHECK(std::abs(rho[1] - 0.5) < 0.01);
  CHECK(std::abs(rho[2] - 0.25) < 0.01);

  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  Eigen::VectorXd iid(10000);
  for (Index i = 0; i < iid.size(); ++i) iid(i) = 5.0 + 1e-6 * z(rng);
  CHECK(std::abs(autocorrelation(iid, 1)[1]) < 3.0 / std::sqrt(10000.0));

  CHECK_THROWS_AS(autocorrelation(Eigen::VectorXd::Constant(50, 2.0), 3), Error);
  CHECK_THROWS_AS(autocorrelation(Eigen::VectorXd::LinSpaced(5, 0, 1), 1), Error);
}

TEST_CASE("effective sample size of AR(1) chains") {
  for (double rho : {0.0, 0.5, 0.9}) {
    const Index n = 100000;
    const double expected = static_cast<double>(n) * (1.0 - rho) / (1.0 + rho);
    CAPTURE(rho);
    CHECK(std::abs(effective_sample_size(ar1(n, rho, 11)) - expected) < 0.1 * expected);
  }
  const Index n = 10000;
  const double iid = effective_sample_size(ar1(n, 0.0, 12));
  CHECK(iid >= 0.9 * n);
  CHECK(iid <= 1.1 * n);
}

TEST_CASE("alternating series clamps at N") {
  Eigen::VectorXd x(1000);
  for (Index i = 0; i < x.size(); ++i) x(i) = i % 2 ? 1.0 : -1.0;
  CHECK(effective_sample_size(x) == 1000.0);
  CHECK_THROWS_AS(effective_sample_size(Eigen::VectorXd::Zero(100)), Error);
}

TEST_CASE("ESS is affine invariant") {
  const auto x = ar1(5000, 0.7, 3);
  const double base = effective_sample_size(x);
  const Eigen::VectorXd y = (-3.0 * x.array() + 10.0).matrix();
  CHECK(effective_sample_size(y) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("estimation error") {
  const Eigen::Vector2d truth(1.0, 2.0);
  CHECK(estimation_error(truth, truth) == 0.0);
  CHECK(estimation_error(Eigen::Vector2d::Zero(), truth) == doctest::Approx(1.0));
  CHECK(estimation_error(Eigen::Vector2d(1.1, 2.2), truth) == doctest::Approx(0.1).epsilon(1e-12));
  const Eigen::Vector2d est(0.3, 2.9);
  CHECK(estimation_error(-4.0 * est, -4.0 * truth) ==
        doctest::Approx(estimation_error(est, truth)).epsilon(1e-14));
  try {
    estimation_error(truth, Eigen::Vector2d::Zero());
    FAIL("expected ZeroTruth");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroTruth);
  }
}

TEST_CASE("quantiles interpolate linearly") {
  CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25) == doctest::Approx(2.0));
  CHECK(quantile({7.0}, 0.975) == 7.0);
}

TEST_CASE("summaries") {
  SUBCASE("single row leaves ESS absent") {
    DrawsMatrix d;
    d.p = 2;
    d.draws = Eigen::MatrixXd::Ones(1, 4);
    const auto s = summarize(d);
    REQUIRE(s.columns.size() == 4);
    for (const auto& c : s.columns) CHECK_FALSE(c.ess.has_value());
    CHECK_FALSE(s.min_ess.has_value());
    CHECK_FALSE(s.ess_per_second.has_value());
  }
  SUBCASE("symmetric draws give mirrored quantiles") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> z;
    DrawsMatrix d;
    d.p = 1;
    d.draws.resize(10000, 3);
    for (Index i = 0; i < 10000; ++i) d.draws.row(i) << z(rng), 1.0 + 0.1 * z(rng), 2.0;
    const auto s = summarize(d);
    CHECK(s.columns[0].q025 < s.columns[0].q975);
    CHECK(std::abs(s.columns[0].q025 + s.columns[0].q975) < 0.05 * s.columns[0].q975);
    CHECK_FALSE(s.columns[2].ess.has_value());
    CHECK(s.min_ess.has_value());
  }
  SUBCASE("ESS per second composes ESS and wall time") {
    const Index n = 100000;
    DrawsMatrix d;
    d.p = 2;
    d.draws.resize(n, 4);
    d.draws.col(0) = ar1(n, 0.5, 21);
    d.draws.col(1) = ar1(n, 0.0, 22);
    d.draws.col(2).setConstant(1.0);
    d.draws.col(3).setConstant(1.0);
    d.wall_time_seconds = 2.0;
    d.iterations = n;
    d.total_rejections = 3 * n;
    const auto s = summarize(d, Eigen::Vector2d(1.0, 1.0));
    REQUIRE(s.ess_per_second.has_value());
    CHECK(std::abs(*s.ess_per_second - n / 6.0) < 0.1 * n / 6.0);
    CHECK(*s.min_ess <= *s.median_ess);
    CHECK(s.rejections_per_iteration == doctest::Approx(3.0));
    REQUIRE(s.error.has_value());
    CHECK(*s.error == doctest::Approx(1.0).epsilon(0.02));

    const auto again = summarize(d, Eigen::Vector2d(1.0, 1.0));
    CHECK(*again.min_ess == *s.min_ess);
    CHECK(*again.error == *s.error);
  }
}
