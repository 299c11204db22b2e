#pragma once

#include "covcast/channel.hpp"
#include "covcast/covertness.hpp"
#include "covcast/fbl.hpp"

namespace covcast {

/// Converts a power level in dBm to watts.
double dbm_to_watts(double dbm);

/// Physical and protocol constants shared by both planners. Defaults are the
/// reference evaluation setup; relay_power_w has no reference value and is
/// a free choice (0.01 W keeps kappa_rw of order one at 600 m).
struct SystemParams {
  double n = 100;              // channel uses per slot
  double rate = 0.1;           // target rate R
  double payload_bits = 1e6;   // M
  double slot_s = 1e-3;        // slot duration
  double epsilon = 0.1;        // covertness constraint
  double sigma_g2_w = 1e-10;   // GU (and relay) noise power
  double sigma_w2_w = 1e-10;   // warden noise power
  double relay_power_w = 0.01; // P_r
  double rho_min = 0.01;
  double rho_max = 1.0 - 1e-6;
  ChannelParams channel;
  double altitude_m = 500;

  void validate() const;
  FblCoeffs fbl() const { return fbl_coeffs(n, rate); }
  PriorBounds prior_bounds() const { return {rho_min, rho_max}; }
};

}  // namespace covcast
