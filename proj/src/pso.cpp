#include "covcast/pso.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "covcast/detail/parallel.hpp"
#include "covcast/error.hpp"
#include "covcast/rng.hpp"

namespace covcast {

void PsoConfig::validate() const {
  if (particles < 2) throw InvalidArgument("PSO needs at least two particles");
  if (iterations < 1) throw InvalidArgument("PSO needs at least one iteration");
  if (!(inertia_w > 0 && inertia_w < 1)) throw InvalidArgument("inertia_w must lie in (0, 1)");
  if (!(accel_c1 > 0) || !(accel_c2 > 0))
    throw InvalidArgument("acceleration constants must be positive");
  if (!(vmax_fraction > 0 && vmax_fraction <= 1))
    throw InvalidArgument("vmax_fraction must lie in (0, 1]");
}

bool project_into_disk(Point2& p, const Circle& disk) {
  const double dx = p.x - disk.center.x, dy = p.y - disk.center.y;
  const double d = std::hypot(dx, dy);
  if (d <= disk.radius) return false;
  const double s = disk.radius / d;
  p = {disk.center.x + dx * s, disk.center.y + dy * s};
  // guard against rounding just outside the boundary
  if (horizontal_distance(p, disk.center) > disk.radius) {
    p.x = disk.center.x + dx * std::nextafter(s, 0.0);
    p.y = disk.center.y + dy * std::nextafter(s, 0.0);
  }
  return true;
}

namespace {

void clamp_speed(Point2& v, double vmax) {
  const double s = std::hypot(v.x, v.y);
  if (s > vmax) {
    v.x *= vmax / s;
    v.y *= vmax / s;
  }
}

}  // namespace

PsoResult pso_minimize(const PsoFitness& fitness, const Circle& disk, const PsoConfig& config,
                       std::span<const Point2> seeded) {
  config.validate();
  if (!(disk.radius > 0)) throw InvalidArgument("PSO search disk must have positive radius");
  if (seeded.size() > static_cast<std::size_t>(config.particles))
    throw InvalidArgument("more seeded candidates than particles");

  const auto m = static_cast<std::size_t>(config.particles);
  const double vmax = config.vmax_fraction * disk.radius;
  constexpr double inf = std::numeric_limits<double>::infinity();
  Rng rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SwarmState swarm;
  swarm.particles.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& p = swarm.particles[i];
    if (i < seeded.size()) {
      p.position = seeded[i];
      project_into_disk(p.position, disk);
      p.velocity = {};
    } else {
      const double r = disk.radius * std::sqrt(unit(rng));
      const double phi = 2 * std::numbers::pi * unit(rng);
      p.position = {disk.center.x + r * std::cos(phi), disk.center.y + r * std::sin(phi)};
      project_into_disk(p.position, disk);
      p.velocity = {vmax * (2 * unit(rng) - 1), vmax * (2 * unit(rng) - 1)};
      clamp_speed(p.velocity, vmax);
    }
  }

  std::vector<double> values(m);
  auto evaluate = [&] {
    detail::parallel_for(m, config.workers, [&](std::size_t i) {
      const double f = fitness(swarm.particles[i].position);
      values[i] = std::isnan(f) ? inf : f;
    });
  };

  evaluate();
  swarm.global_best_fitness = inf;
  swarm.global_best = swarm.particles[0].position;
  for (std::size_t i = 0; i < m; ++i) {
    auto& p = swarm.particles[i];
    p.best_position = p.position;
    p.best_fitness = values[i];
    if (values[i] < swarm.global_best_fitness) {
      swarm.global_best_fitness = values[i];
      swarm.global_best = p.position;
    }
  }

  PsoResult result;
  result.trace.reserve(static_cast<std::size_t>(config.iterations) + 1);
  result.trace.push_back(swarm.global_best_fitness);

  std::vector<double> psi(4 * m);
  for (swarm.iteration = 1; swarm.iteration <= config.iterations; ++swarm.iteration) {
    // draw every learning coefficient up front, particle-major
    for (double& u : psi) u = unit(rng);
    for (std::size_t i = 0; i < m; ++i) {
      auto& p = swarm.particles[i];
      const double* u = &psi[4 * i];
      const Point2 g = swarm.global_best;
      p.velocity.x = config.inertia_w * p.velocity.x +
                     config.accel_c1 * u[0] * (p.best_position.x - p.position.x) +
                     config.accel_c2 * u[1] * (g.x - p.position.x);
      p.velocity.y = config.inertia_w * p.velocity.y +
                     config.accel_c1 * u[2] * (p.best_position.y - p.position.y) +
                     config.accel_c2 * u[3] * (g.y - p.position.y);
      clamp_speed(p.velocity, vmax);
      p.position.x += p.velocity.x;
      p.position.y += p.velocity.y;
      if (project_into_disk(p.position, disk)) p.velocity = {};
    }
    evaluate();
    for (std::size_t i = 0; i < m; ++i) {
      auto& p = swarm.particles[i];
      if (values[i] < p.best_fitness) {
        p.best_fitness = values[i];
        p.best_position = p.position;
        if (values[i] < swarm.global_best_fitness) {
          swarm.global_best_fitness = values[i];
          swarm.global_best = p.position;
        }
      }
    }
    result.trace.push_back(swarm.global_best_fitness);
  }

  if (!std::isfinite(swarm.global_best_fitness))
    throw AllInfeasible("no particle reached a feasible position");
  result.best = swarm.global_best;
  result.fitness = swarm.global_best_fitness;
  return result;
}

}  // namespace covcast
