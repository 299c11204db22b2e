#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "covcast/params.hpp"
#include "covcast/pso.hpp"
#include "covcast/scenario.hpp"

namespace covcast {

/// One-hop plan: the UAV multicasts directly from `hover`.
struct OhPlan {
  double power_w = 0.0;
  double rho1 = 0.5;
  Point2 hover;
  double time_slots = 0.0;
  double time_s = 0.0;
  std::size_t worst_gu = 0;
  double gamma_worst = 0.0;  // SNR at the worst GU
  Regime regime = Regime::kLinear;
};

/// Two-hop plan: the UAV hovers over GU `relay`, which re-multicasts to the
/// remaining GUs.
struct ThPlan {
  double power_w = 0.0;
  double rho1 = 0.5;
  std::size_t relay = 0;
  double time_slots = 0.0;
  double time_s = 0.0;
  std::size_t worst_gu = 0;
  double kappa_rw = 0.0;
  double gamma_ar = 0.0;
  double gamma_arg = 0.0;  // mean-fading MRC SNR at the worst GU
};

/// Closed-form optimal power, prior and time for a fixed hover position.
/// Throws InvalidArgument if `hover` lies outside the service area and
/// Infeasible if the worst GU cannot leave the saturated-error regime.
OhPlan solve_oh_at(const Scenario& scenario, Point2 hover, const SystemParams& params);

/// Particle swarm search of the hover position; the minimum-enclosing-circle
/// center and the GU centroid are always among the initial particles.
OhPlan solve_oh_pso(const Scenario& scenario, const SystemParams& params,
                    const PsoConfig& pso);

/// Closed-form plan with GU `relay` relaying. Throws InvalidArgument for
/// fewer than two GUs or a bad index and Infeasible when the power floor of
/// either hop exceeds the covert budget.
ThPlan solve_th_at(const Scenario& scenario, std::size_t relay, const SystemParams& params);

/// Exhaustive relay selection; ties go to the lowest index. Infeasible relays
/// are skipped. Throws AllInfeasible if none is feasible.
ThPlan select_relay(const Scenario& scenario, const SystemParams& params, unsigned workers = 1);

}  // namespace covcast
