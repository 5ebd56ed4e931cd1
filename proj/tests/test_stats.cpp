#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "streamlens/error.hpp"
#include "streamlens/stats.hpp"

using namespace streamlens;

TEST_CASE("sample moments use divisor T") {
  auto m = sample_moments(TimeSeries(Eigen::Vector3d(2, 2, 2)));
  CHECK(m.mean == 2.0);
  CHECK(m.variance == 0.0);
  m = sample_moments(TimeSeries(Eigen::Vector2d(0, 1)));
  CHECK(m.mean == 0.5);
  CHECK(m.variance == 0.25);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u;
  Eigen::VectorXd x(1000);
  for (auto& v : x) v = u(rng);
  m = sample_moments(TimeSeries(x));
  CHECK(std::abs(m.mean - 0.5) < 0.05);
  CHECK(std::abs(m.variance - 1.0 / 12.0) < 0.02);
}

TEST_CASE("autocovariance matches the double loop") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 300;
    const auto x = oracle::random_vector(n, rng);
    const int max_lag = static_cast<int>(n - 1);
    const auto acov = autocovariance(TimeSeries(oracle::to_eigen(x)), max_lag);
    REQUIRE(acov.values.size() == max_lag + 1);
    for (int k = 0; k <= max_lag; ++k) CHECK(std::abs(acov.at(k) - oracle::cross_cov(x, x, k)) < 1e-12);
  }
}

TEST_CASE("alternating series has rho_1 = -(T-1)/T") {
  Eigen::VectorXd x(100);
  for (int i = 0; i < 100; ++i) x[i] = i % 2 ? -1.0 : 1.0;
  const auto r = autocorrelation(TimeSeries(x), 1);
  CHECK(r.at(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.at(1) == doctest::Approx(-0.99).epsilon(1e-12));
}

TEST_CASE("constant series has zero variance") {
  CHECK_THROWS_WITH_AS(autocorrelation(TimeSeries(Eigen::VectorXd::Constant(10, 3.0))), "zero variance", Error);
  CHECK_THROWS_AS(autocovariance(TimeSeries(Eigen::VectorXd::Ones(10)), 10), Error);
}

TEST_CASE("default max lag is T/4") {
  CHECK(default_max_lag(100) == 25);
  const auto a = autocovariance(TimeSeries(Eigen::VectorXd::LinSpaced(40, 0, 1)));
  CHECK(a.lags.size() == 11);
}

TEST_CASE("cross covariance matches the double loop at negative and positive lags") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng() % 200;
    const auto x = oracle::random_vector(n, rng);
    const auto y = oracle::random_vector(n, rng);
    const int L = static_cast<int>(n / 2);
    const auto c = cross_covariance(TimeSeries(oracle::to_eigen(x)), TimeSeries(oracle::to_eigen(y)), L);
    REQUIRE(c.lags.size() == 2 * L + 1);
    CHECK(c.lags[0] == -L);
    for (int k = -L; k <= L; ++k) CHECK(std::abs(c.at(k) - oracle::cross_cov(x, y, k)) < 1e-12);
    // Symmetry under swapping the inputs.
    const auto swapped = cross_covariance(TimeSeries(oracle::to_eigen(y)), TimeSeries(oracle::to_eigen(x)), L);
    for (int k = -L; k <= L; ++k) CHECK(std::abs(c.at(k) - swapped.at(-k)) < 1e-14);
  }
}

TEST_CASE("cross correlation normalizations") {
  std::mt19937_64 rng(4);
  const auto xs = oracle::random_vector(200, rng);
  const TimeSeries x(oracle::to_eigen(xs));
  CHECK(cross_correlation(x, x, 0).at(0) == doctest::Approx(1.0).epsilon(1e-12));

  const auto ys = oracle::random_vector(200, rng);
  const TimeSeries y(oracle::to_eigen(ys));
  const auto s = cross_correlation(x, y, 20);
  CHECK(s.values.cwiseAbs().maxCoeff() <= 1.0 + 1e-9);
  const auto p = cross_correlation(x, y, 20, Normalization::lag_zero);
  const double g0 = oracle::cross_cov(xs, ys, 0);
  for (int k = -20; k <= 20; ++k) CHECK(p.at(k) == doctest::Approx(oracle::cross_cov(xs, ys, k) / g0).epsilon(1e-10));

  CHECK_THROWS_AS(cross_correlation(x, TimeSeries(Eigen::VectorXd::Ones(200))), Error);
  CHECK_THROWS_AS(cross_correlation(x, TimeSeries(Eigen::VectorXd::Ones(199) * 2.0 + Eigen::VectorXd::LinSpaced(199, 0, 1))), Error);
}

TEST_CASE("shifted sine peaks at the shift") {
  const int n = 400, d = 7;
  Eigen::VectorXd x(n), y(n);
  for (int t = 0; t < n; ++t) {
    x[t] = std::sin(2 * std::numbers::pi * t / 50.0);
    y[t] = std::sin(2 * std::numbers::pi * (t - d) / 50.0);
  }
  const auto c = cross_correlation(TimeSeries(x), TimeSeries(y), 20);
  Eigen::Index best;
  c.values.maxCoeff(&best);
  CHECK(c.lags[best] == d);
}

TEST_CASE("shift invariance and scale equivariance") {
  std::mt19937_64 rng(6);
  const Eigen::VectorXd x = oracle::to_eigen(oracle::random_vector(256, rng));
  const Eigen::VectorXd y = oracle::to_eigen(oracle::random_vector(256, rng));
  const auto base = cross_covariance(TimeSeries(x), TimeSeries(y), 30);
  const auto shifted = cross_covariance(TimeSeries((x.array() + 1e3).matrix()), TimeSeries(y), 30);
  CHECK((base.values - shifted.values).cwiseAbs().maxCoeff() < 1e-9);
  const auto scaled = cross_covariance(TimeSeries(3.5 * x), TimeSeries(y), 30);
  CHECK((3.5 * base.values - scaled.values).cwiseAbs().maxCoeff() < 1e-12);
  const auto r0 = cross_correlation(TimeSeries(x), TimeSeries(y), 30);
  const auto r1 = cross_correlation(TimeSeries(3.5 * x), TimeSeries(y), 30);
  CHECK((r0.values - r1.values).cwiseAbs().maxCoeff() < 1e-9);
}
