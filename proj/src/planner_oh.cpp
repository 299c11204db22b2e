#include <cmath>
#include <limits>
#include <string>

#include "covcast/channel.hpp"
#include "covcast/covertness.hpp"
#include "covcast/error.hpp"
#include "covcast/fbl.hpp"
#include "covcast/planner.hpp"

namespace covcast {
namespace {

double below(double bound) { return std::nextafter(bound, 0.0); }

// Optimal prior for the one-hop problem. `a` is the worst-GU SNR reached with
// the rho1 = 0.5 covert budget.
//
// For rho1 >= 0.5 the budget scales as (1 - rho1)/rho1, so the throughput
// rho1 n R (1 - eta) is linear in rho1 on the linear band with slope sign
// 1 - 2s(a + t), and increasing while the worst link stays error-free. For
// rho1 <= 0.5 it is increasing. Hence rho1 = 0.5 unless the slope is positive
// (push to the upper bound) or the link is error-free at 0.5 (push until the
// SNR reaches the upper knee).
//
// The slope threshold (1 - 2st)/(2s) equals minus the lower knee, so a
// positive slope needs a negative lower knee. The power floor then never
// binds and the bound on rho1 is rho_max itself.
double optimal_rho1(double a, const FblCoeffs& c, const SystemParams& p) {
  const double s = c.varsigma, t = c.vartheta;
  const double threshold = (1 - 2 * s * t) / (2 * s);
  const double rho_cap = below(p.rho_max);
  if (a < threshold) return rho_cap;
  const double knee = c.upper_knee();
  if (a > knee) return std::min(a / (a + knee), rho_cap);
  return 0.5;
}

}  // namespace

OhPlan solve_oh_at(const Scenario& scenario, Point2 hover, const SystemParams& params) {
  scenario.validate();
  if (horizontal_distance(hover, scenario.area_center) > scenario.area_radius_m + 1e-9)
    throw InvalidHover("hover position lies outside the service area");

  const FblCoeffs c = params.fbl();
  const auto& ch = params.channel;
  const double h = scenario.altitude_m;
  const auto [worst, l_ag] = farthest_gu(scenario, hover);
  const double h_ag = a2g_gain(l_ag, h, ch);
  const double h_aw = a2g_gain(horizontal_distance(hover, scenario.willie), h, ch);

  const PriorPair even(0.5, params.prior_bounds());
  const double a =
      covert_power_oh(h_aw, params.sigma_w2_w, even, params.epsilon, params.n) * h_ag /
      params.sigma_g2_w;

  OhPlan plan;
  plan.hover = hover;
  plan.worst_gu = worst;
  plan.rho1 = optimal_rho1(a, c, params);
  const PriorPair priors(plan.rho1, params.prior_bounds());
  plan.power_w = covert_power_oh(h_aw, params.sigma_w2_w, priors, params.epsilon, params.n);
  plan.gamma_worst = plan.power_w * h_ag / params.sigma_g2_w;
  plan.regime = classify(plan.gamma_worst, c).regime;

  const double p_min = c.lower_knee() * params.sigma_g2_w / h_ag;
  const double throughput = effective_throughput_oh(plan.gamma_worst, plan.rho1, c);
  if (plan.power_w < p_min || !(throughput > 0))
    throw Infeasible("covert power " + std::to_string(plan.power_w) +
                     " W is below the decoding floor " + std::to_string(p_min) + " W");
  plan.time_slots = params.payload_bits / throughput;
  plan.time_s = plan.time_slots * params.slot_s;
  return plan;
}

OhPlan solve_oh_pso(const Scenario& scenario, const SystemParams& params,
                    const PsoConfig& pso) {
  scenario.validate();
  const Circle area{scenario.area_center, scenario.area_radius_m};
  const Point2 seeds[] = {min_enclosing_circle(scenario.gus).center, centroid(scenario.gus)};
  auto fitness = [&](Point2 q) {
    try {
      return solve_oh_at(scenario, q, params).time_slots;
    } catch (const Infeasible&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const PsoResult best = pso_minimize(fitness, area, pso, seeds);
  return solve_oh_at(scenario, best.best, params);
}

}  // namespace covcast
