#include "covcast/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "covcast/error.hpp"
#include "covcast/numerics.hpp"

namespace covcast {
namespace {

void require_linear(double snr, const FblCoeffs& c, const char* hop) {
  const auto r = classify(snr, c).regime;
  if (r != Regime::kLinear)
    throw RegimeError(std::string(hop) + " SNR " + std::to_string(snr) + " is in the " +
                      regime_name(r) + " regime");
}

}  // namespace

FblCoeffs fbl_coeffs(double n, double rate) {
  if (!(n >= 1)) throw InvalidArgument("n must be at least 1");
  if (!(rate > 0)) throw InvalidArgument("rate must be positive");
  FblCoeffs c;
  c.n = n;
  c.rate = rate;
  c.varsigma = std::sqrt(n / (2 * std::numbers::pi * std::expm1(2 * rate)));
  c.vartheta = std::expm1(rate);
  return c;
}

LinkBudget classify(double snr, const FblCoeffs& c) {
  if (snr < c.lower_knee()) return {snr, Regime::kSaturatedError};
  if (snr > c.upper_knee()) return {snr, Regime::kErrorFree};
  return {snr, Regime::kLinear};
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kSaturatedError: return "saturated-error";
    case Regime::kLinear: return "linear";
    case Regime::kErrorFree: return "error-free";
  }
  return "?";
}

double decode_error_exact(double gamma, double n, double rate) {
  if (!(gamma > 0)) throw InvalidArgument("decode_error_exact requires gamma > 0");
  const double arg = std::sqrt(n) * (1 + gamma) *
                     (std::log1p(gamma) + 0.5 * std::log(n) - rate * std::numbers::ln2) /
                     std::sqrt(gamma * (gamma + 2));
  return q_function(arg);
}

double decode_error_linear(double gamma, const FblCoeffs& c) {
  if (gamma < c.lower_knee()) return 1.0;
  if (gamma > c.upper_knee()) return 0.0;
  return std::clamp(-c.varsigma * (gamma - c.vartheta) + 0.5, 0.0, 1.0);
}

double effective_throughput_oh(double gamma_ag, double rho1, const FblCoeffs& c) {
  return rho1 * c.n * c.rate * (1.0 - decode_error_linear(gamma_ag, c));
}

double throughput_oh(double gamma_ag, double rho1, const FblCoeffs& c) {
  require_linear(gamma_ag, c, "UAV-GU");
  return 0.5 * rho1 * c.n * c.rate * (1 + 2 * c.varsigma * (gamma_ag - c.vartheta));
}

double time_oh(double gamma_ag, double rho1, const FblCoeffs& c, double payload_bits) {
  return payload_bits / throughput_oh(gamma_ag, rho1, c);
}

double effective_throughput_th(double gamma_ar, double gamma_arg, double rho1,
                               const FblCoeffs& c) {
  const double m = std::min(rho1, 1.0 - rho1);
  return m * c.n * c.rate * (1.0 - decode_error_linear(gamma_ar, c)) *
         (1.0 - decode_error_linear(gamma_arg, c));
}

double throughput_th(double gamma_ar, double gamma_arg, double rho1, const FblCoeffs& c) {
  require_linear(gamma_ar, c, "UAV-relay");
  require_linear(gamma_arg, c, "relay-GU (MRC)");
  const double m = std::min(rho1, 1.0 - rho1);
  return 0.25 * m * c.n * c.rate * (1 + 2 * c.varsigma * (gamma_ar - c.vartheta)) *
         (1 + 2 * c.varsigma * (gamma_arg - c.vartheta));
}

double time_th(double gamma_ar, double gamma_arg, double rho1, const FblCoeffs& c,
               double payload_bits) {
  return payload_bits / throughput_th(gamma_ar, gamma_arg, rho1, c);
}

}  // namespace covcast
