#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "covcast/error.hpp"
#include "covcast/numerics.hpp"
#include "oracles.hpp"

using namespace covcast;

TEST_CASE("quadrature oracles reproduce the frozen reference values") {
  CHECK(oracle::e1_quadrature(1.0) == doctest::Approx(0.21938393439552027).epsilon(1e-12));
  CHECK(oracle::e1_quadrature(10.0) == doctest::Approx(4.156968929685324e-6).epsilon(1e-12));
  CHECK(oracle::q_quadrature(1.96) == doctest::Approx(0.024997895148220436).epsilon(1e-12));
}

TEST_CASE("q_function") {
  CHECK(q_function(0) == 0.5);
  CHECK(std::abs(q_function(1.96) - 0.0249979) < 1e-6);
  CHECK(q_function(1.96) == doctest::Approx(oracle::q_quadrature(1.96)).epsilon(1e-12));
  CHECK(q_function(40) < 1e-300);
  CHECK(q_function(-40) == 1.0);

  double prev = 1.0;
  for (double x = -10; x <= 10; x += 0.01) {
    const double q = q_function(x);
    CHECK(q >= 0);
    CHECK(q <= 1);
    CHECK(q <= prev);
    CHECK(std::abs(q + q_function(-x) - 1.0) <= 1e-12);
    prev = q;
  }
}

TEST_CASE("q_function matches an empirical normal tail") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> n01;
  const int draws = 1'000'000;
  int above[3] = {0, 0, 0};
  const double xs[3] = {0.5, 1.0, 2.0};
  for (int i = 0; i < draws; ++i) {
    const double z = n01(rng);
    for (int k = 0; k < 3; ++k) above[k] += z > xs[k];
  }
  for (int k = 0; k < 3; ++k) {
    const double q = q_function(xs[k]);
    const double se = std::sqrt(q * (1 - q) / draws);
    CHECK(std::abs(above[k] / double(draws) - q) <= 3 * se);
  }
}

TEST_CASE("exp_integral_e1 against the quadrature oracle") {
  for (double z : {1e-6, 1e-3, 0.05, 0.1, 0.5, 0.999, 1.0, 1.001, 1.5, 2.16, 5.0, 10.0, 30.0, 100.0}) {
    CAPTURE(z);
    const double ref = oracle::e1_quadrature(z);
    CHECK(std::abs(exp_integral_e1(z) - ref) <= 1e-10 * ref);
  }
  CHECK(exp_integral_e1(1.0) == doctest::Approx(0.2193839).epsilon(1e-7));
  CHECK(exp_integral_e1(10.0) == doctest::Approx(4.15697e-6).epsilon(1e-6));
}

TEST_CASE("exp_integral_e1 bounds, monotonicity and derivative") {
  for (double z : {0.1, 1.0, 10.0}) {
    const double e1 = exp_integral_e1(z);
    CHECK(e1 > std::exp(-z) / (z + 1));
    CHECK(e1 < std::exp(-z) / z);
  }
  double prev = INFINITY;
  for (double z = 0.01; z < 50; z *= 1.1) {
    const double e1 = exp_integral_e1(z);
    CHECK(e1 > 0);
    CHECK(e1 < prev);
    prev = e1;
  }
  for (double z : {0.5, 1.0, 2.0, 5.0}) {
    const double h = 1e-5;
    const double fd = (exp_integral_e1(z + h) - exp_integral_e1(z - h)) / (2 * h);
    CHECK(std::abs(fd - (-std::exp(-z) / z)) <= 1e-6);
  }
  CHECK_THROWS_AS(exp_integral_e1(0.0), InvalidArgument);
  CHECK_THROWS_AS(exp_integral_e1(-1.0), InvalidArgument);
}

TEST_CASE("exp_scaled_e1 survives large arguments") {
  // e^z E1(z) ~ 1/z (1 - 1/z + 2/z^2)
  const double z = 1000.0;
  CHECK(exp_scaled_e1(z) == doctest::Approx((1 - 1 / z + 2 / (z * z)) / z).epsilon(1e-8));
  CHECK(exp_scaled_e1(2.0) == doctest::Approx(std::exp(2.0) * exp_integral_e1(2.0)).epsilon(1e-14));
}

TEST_CASE("rayleigh_interference_factor") {
  CHECK(rayleigh_interference_factor(1.0) == doctest::Approx(0.5963474).epsilon(1e-7));
  CHECK(std::abs(rayleigh_interference_factor(100.0) - 0.990195) <= 1e-4);
  CHECK(rayleigh_interference_factor(1e-6) < 2e-5);
  CHECK_THROWS_AS(rayleigh_interference_factor(0.0), InvalidArgument);

  double prev = 0;
  for (double k = 1e-4; k < 1e4; k *= 1.3) {
    const double f = rayleigh_interference_factor(k);
    CHECK(f > k / (k + 1));
    CHECK(f < 1.0);
    CHECK(f > prev);
    prev = f;
  }
}
