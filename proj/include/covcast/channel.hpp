#pragma once

#include "covcast/rng.hpp"

namespace covcast {

/// S-curve line-of-sight parameters and path-loss exponents.
struct ChannelParams {
  double s_curve_e = 4.88;
  double s_curve_f = 0.429;   // per degree
  double alpha_los = -2.0;    // air-to-ground
  double alpha_g2g = -3.0;    // ground-to-ground

  void validate() const;
};

/// Probability of a line-of-sight air-to-ground link at elevation
/// `theta_deg` in (0, 90].
double los_probability(double theta_deg, const ChannelParams& params);

/// Air-to-ground gain P_LoS(theta) * d^alpha_los with d the slant range.
double a2g_gain(double horizontal_dist, double altitude_m, const ChannelParams& params);

/// Mean ground-to-ground gain dist^alpha_g2g (unit-mean Rayleigh power).
double g2g_mean_gain(double dist, const ChannelParams& params);

/// Unit-mean exponential draws of the Rayleigh power |h|^2.
class FadingSampler {
 public:
  explicit FadingSampler(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return dist_(rng_); }

 private:
  Rng rng_;
  std::exponential_distribution<double> dist_{1.0};
};

}  // namespace covcast
