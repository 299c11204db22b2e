#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "covcast/scenario.hpp"

namespace covcast {

struct PsoConfig {
  int particles = 30;
  int iterations = 100;
  double inertia_w = 0.729;
  double accel_c1 = 1.49445;
  double accel_c2 = 1.49445;
  double vmax_fraction = 0.5;  // of the disk radius, per iteration
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void validate() const;
};

struct PsoParticle {
  Point2 position;
  Point2 velocity;
  Point2 best_position;
  double best_fitness;
};

struct SwarmState {
  std::vector<PsoParticle> particles;
  Point2 global_best;
  double global_best_fitness;
  int iteration = 0;
};

struct PsoResult {
  Point2 best;
  double fitness;
  /// Global-best fitness after initialization (entry 0) and after every
  /// iteration; nonincreasing.
  std::vector<double> trace;
};

/// Fitness to minimize; return +inf for infeasible positions. Must be safe to
/// call concurrently when config.workers > 1.
using PsoFitness = std::function<double(Point2)>;

/// Minimizes `fitness` over the closed disk. `seeded` positions occupy the
/// first particle slots with zero initial velocity. Throws AllInfeasible when
/// no evaluated position has finite fitness.
PsoResult pso_minimize(const PsoFitness& fitness, const Circle& disk, const PsoConfig& config,
                       std::span<const Point2> seeded = {});

/// Radial projection onto the closed disk. Returns true if `p` was moved.
bool project_into_disk(Point2& p, const Circle& disk);

}  // namespace covcast
