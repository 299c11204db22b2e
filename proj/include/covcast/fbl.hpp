#pragma once

namespace covcast {

/// Constants of the linearized finite-blocklength decoding error around the
/// SNR threshold.
struct FblCoeffs {
  double varsigma = 0.0;  // slope, sqrt(n / (2 pi (e^{2R} - 1)))
  double vartheta = 0.0;  // threshold SNR, e^R - 1
  double n = 0.0;
  double rate = 0.0;

  double lower_knee() const { return vartheta - 1.0 / (2.0 * varsigma); }
  double upper_knee() const { return vartheta + 1.0 / (2.0 * varsigma); }
};

enum class Regime { kSaturatedError, kLinear, kErrorFree };

struct LinkBudget {
  double snr = 0.0;
  Regime regime = Regime::kLinear;
};

FblCoeffs fbl_coeffs(double n, double rate);

LinkBudget classify(double snr, const FblCoeffs& c);

const char* regime_name(Regime r);

/// Normal-approximation decoding error
/// Q(sqrt(n)(1+g)(ln(1+g) + ln(n)/2 - R ln 2) / sqrt(g(g+2))).
double decode_error_exact(double gamma, double n, double rate);

/// Three-branch linearization: 1 below the lower knee, 0 above the upper
/// knee, -s(g - t) + 1/2 between.
double decode_error_linear(double gamma, const FblCoeffs& c);

/// rho1 n R (1 - eta): bits delivered per slot with the linear error model,
/// valid in every regime.
double effective_throughput_oh(double gamma_ag, double rho1, const FblCoeffs& c);

/// 1/2 rho1 n R (1 + 2s(g - t)). Throws RegimeError outside the linear band.
double throughput_oh(double gamma_ag, double rho1, const FblCoeffs& c);

/// Slots to deliver `payload_bits` at throughput_oh.
double time_oh(double gamma_ag, double rho1, const FblCoeffs& c, double payload_bits);

/// min(rho0, rho1) n R (1 - eta_ar)(1 - eta_arg), valid in every regime.
double effective_throughput_th(double gamma_ar, double gamma_arg, double rho1,
                               const FblCoeffs& c);

/// 1/4 min(rho0,rho1) n R (1 + 2s(g_ar - t))(1 + 2s(g_arg - t)). Throws
/// RegimeError naming the offending hop outside the linear band.
double throughput_th(double gamma_ar, double gamma_arg, double rho1, const FblCoeffs& c);

double time_th(double gamma_ar, double gamma_arg, double rho1, const FblCoeffs& c,
               double payload_bits);

}  // namespace covcast
