#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "covcast/channel.hpp"
#include "covcast/covertness.hpp"
#include "covcast/detail/parallel.hpp"
#include "covcast/error.hpp"
#include "covcast/fbl.hpp"
#include "covcast/planner.hpp"

namespace covcast {

ThPlan solve_th_at(const Scenario& scenario, std::size_t relay, const SystemParams& params) {
  scenario.validate();
  if (scenario.gus.size() < 2) throw InvalidArgument("two-hop planning needs at least two GUs");
  if (relay >= scenario.gus.size()) throw InvalidArgument("relay index out of range");

  const FblCoeffs c = params.fbl();
  const auto& ch = params.channel;
  const double h = scenario.altitude_m;
  const Point2 r = scenario.gus[relay];

  // the UAV hovers directly above the relay
  const double h_ar = a2g_gain(0.0, h, ch);
  const double l_rw = horizontal_distance(r, scenario.willie);
  const double h_aw = a2g_gain(l_rw, h, ch);

  std::size_t worst = relay;
  double l_rg = -1.0;
  for (std::size_t g = 0; g < scenario.gus.size(); ++g) {
    if (g == relay) continue;
    const double d = horizontal_distance(scenario.gus[g], r);
    if (d > l_rg) {
      l_rg = d;
      worst = g;
    }
  }
  const double h_ag = a2g_gain(l_rg, h, ch);
  const double h_rg = g2g_mean_gain(l_rg, ch);

  ThPlan plan;
  plan.relay = relay;
  plan.worst_gu = worst;
  plan.rho1 = 0.5;
  plan.kappa_rw = relay_kappa(params.sigma_w2_w, params.relay_power_w, l_rw, ch.alpha_g2g);
  const PriorPair priors(plan.rho1, params.prior_bounds());
  plan.power_w = covert_power_th(h_aw, plan.kappa_rw, params.sigma_w2_w, priors,
                                 params.epsilon, params.n);

  const double sigma_r2 = params.sigma_g2_w;
  plan.gamma_ar = plan.power_w * h_ar / sigma_r2;
  plan.gamma_arg = (plan.power_w * h_ag + params.relay_power_w * h_rg) / params.sigma_g2_w;

  const double knee = c.lower_knee();
  const double p_min = std::max(knee * sigma_r2 / h_ar,
                                (knee * params.sigma_g2_w - params.relay_power_w * h_rg) / h_ag);
  const double throughput = effective_throughput_th(plan.gamma_ar, plan.gamma_arg, plan.rho1, c);
  if (plan.power_w < p_min || !(throughput > 0))
    throw Infeasible("relay " + std::to_string(relay) + ": covert power " +
                     std::to_string(plan.power_w) + " W is below the decoding floor " +
                     std::to_string(p_min) + " W");
  plan.time_slots = params.payload_bits / throughput;
  plan.time_s = plan.time_slots * params.slot_s;
  return plan;
}

ThPlan select_relay(const Scenario& scenario, const SystemParams& params, unsigned workers) {
  scenario.validate();
  if (scenario.gus.size() < 2) throw InvalidArgument("two-hop planning needs at least two GUs");
  std::vector<std::optional<ThPlan>> plans(scenario.gus.size());
  detail::parallel_for(plans.size(), workers, [&](std::size_t r) {
    try {
      plans[r] = solve_th_at(scenario, r, params);
    } catch (const Infeasible&) {
    }
  });
  const ThPlan* best = nullptr;
  for (const auto& p : plans)
    if (p && (!best || p->time_slots < best->time_slots)) best = &*p;
  if (!best) throw AllInfeasible("no relay candidate is feasible");
  return *best;
}

}  // namespace covcast
