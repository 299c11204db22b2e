#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace covcast {

/// Horizontal coordinate in meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Circle {
  Point2 center;
  double radius = 0.0;
};

/// Problem geometry: ground users, the warden, the UAV altitude and the
/// circular service area. Immutable once validated.
struct Scenario {
  std::vector<Point2> gus;
  Point2 willie;
  double altitude_m = 0.0;
  double area_radius_m = 0.0;
  Point2 area_center;

  /// Throws InvalidArgument if any invariant is violated.
  void validate() const;
};

double horizontal_distance(Point2 a, Point2 b);

/// Elevation angle in degrees of a node seen from altitude `altitude_m` at
/// horizontal offset `horizontal_dist`. Returns exactly 90 when overhead.
double elevation_angle_deg(double horizontal_dist, double altitude_m);

/// Smallest circle covering `points` (randomized incremental algorithm with a
/// fixed permutation seed, so the result is deterministic).
Circle min_enclosing_circle(std::span<const Point2> points);

Point2 centroid(std::span<const Point2> points);

/// Index and distance of the GU farthest from `from`; ties go to the lowest
/// index.
std::pair<std::size_t, double> farthest_gu(const Scenario& scenario, Point2 from);

/// Draws a GU layout from a homogeneous Poisson point process of `density`
/// (per square meter) in the disk of radius `area_radius_m` centered at the
/// origin. Empty draws are redrawn, at most kMaxRedraws times.
Scenario sample_ppp_scenario(double density, double area_radius_m, Point2 willie,
                             double altitude_m, std::uint64_t rng_seed);

inline constexpr int kMaxRedraws = 1000;

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

}  // namespace covcast
