#include "covcast/params.hpp"

#include <cmath>

#include "covcast/error.hpp"

namespace covcast {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void SystemParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be positive");
  };
  positive(n, "n");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  positive(rate, "rate");
  positive(payload_bits, "payload_bits");
  positive(slot_s, "slot_s");
  positive(sigma_g2_w, "sigma_g2_w");
  positive(sigma_w2_w, "sigma_w2_w");
  positive(relay_power_w, "relay_power_w");
  positive(altitude_m, "altitude_m");
  if (!(epsilon > 0 && epsilon < 0.5)) throw InvalidArgument("epsilon must lie in (0, 0.5)");
  if (!(rho_min > 0 && rho_min <= 0.5)) throw InvalidArgument("rho_min must lie in (0, 0.5]");
  if (!(rho_max > 0.5 && rho_max < 1)) throw InvalidArgument("rho_max must lie in (0.5, 1)");
  channel.validate();
}

}  // namespace covcast
