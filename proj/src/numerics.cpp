#include "covcast/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "covcast/error.hpp"

namespace covcast {
namespace {

constexpr int kMaxIter = 10000;

void check_positive(double z) {
  if (!(z > 0) || std::isnan(z)) throw InvalidArgument("E1 requires z > 0");
}

// Power series: E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!).
double e1_series(double z, const AccuracySpec& acc) {
  const double head = -std::numbers::egamma - std::log(z);
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < kMaxIter; ++k) {
    term *= -z / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) <= 1e-3 * (acc.rel_tol * std::abs(head - sum) + acc.abs_tol)) break;
  }
  return head - sum;
}

// e^z E1(z) by the modified Lentz continued fraction
// 1/(z+1- 1/(z+3- 4/(z+5- ...))).
double scaled_e1_cf(double z, const AccuracySpec& acc) {
  constexpr double tiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) <= acc.rel_tol * 1e-3) return h;
  }
  return h;
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double exp_integral_e1(double z, AccuracySpec acc) {
  check_positive(z);
  if (z <= 1.0) return e1_series(z, acc);
  return std::exp(-z) * scaled_e1_cf(z, acc);
}

double exp_scaled_e1(double z, AccuracySpec acc) {
  check_positive(z);
  if (z <= 1.0) return std::exp(z) * e1_series(z, acc);
  return scaled_e1_cf(z, acc);
}

double rayleigh_interference_factor(double kappa) {
  if (!(kappa > 0) || std::isnan(kappa))
    throw InvalidArgument("interference factor requires kappa > 0");
  if (std::isinf(kappa)) return 1.0;
  return kappa * exp_scaled_e1(kappa);
}

}  // namespace covcast
