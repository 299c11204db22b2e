#include "covcast/channel.hpp"

#include <cmath>

#include "covcast/error.hpp"
#include "covcast/scenario.hpp"

namespace covcast {

void ChannelParams::validate() const {
  if (!(s_curve_e > 0)) throw InvalidArgument("s_curve_e must be positive");
  if (!(s_curve_f > 0)) throw InvalidArgument("s_curve_f must be positive");
  if (!(alpha_los < 0)) throw InvalidArgument("alpha_los must be negative");
  if (!(alpha_g2g < 0)) throw InvalidArgument("alpha_g2g must be negative");
}

double los_probability(double theta_deg, const ChannelParams& params) {
  if (!(theta_deg > 0 && theta_deg <= 90))
    throw InvalidArgument("elevation angle must lie in (0, 90] degrees");
  const double e = params.s_curve_e;
  return 1.0 / (1.0 + e * std::exp(-params.s_curve_f * (theta_deg - e)));
}

double a2g_gain(double horizontal_dist, double altitude_m, const ChannelParams& params) {
  const double theta = elevation_angle_deg(horizontal_dist, altitude_m);
  const double d2 = horizontal_dist * horizontal_dist + altitude_m * altitude_m;
  return los_probability(theta, params) * std::pow(d2, params.alpha_los / 2);
}

double g2g_mean_gain(double dist, const ChannelParams& params) {
  if (!(dist > 0)) throw InvalidArgument("ground-to-ground distance must be positive");
  return std::pow(dist, params.alpha_g2g);
}

}  // namespace covcast
