#include "covcast/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "covcast/error.hpp"
#include "covcast/rng.hpp"

namespace covcast {
namespace {

constexpr double kContainSlack = 1e-10;

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

bool contains(const Circle& c, Point2 p) {
  return horizontal_distance(c.center, p) <= c.radius * (1.0 + 1e-12) + kContainSlack;
}

Circle from_two(Point2 a, Point2 b) {
  Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
  return {mid, horizontal_distance(a, b) / 2};
}

Circle from_three(Point2 a, Point2 b, Point2 c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2 * (bx * cy - by * cx);
  const double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy), 1.0});
  if (std::abs(d) <= 1e-14 * scale * scale) {
    // collinear: the widest pair spans the other point
    Circle best = from_two(a, b);
    for (const Circle& cand : {from_two(a, c), from_two(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const Point2 u{(cy * b2 - by * c2) / d, (bx * c2 - cx * b2) / d};
  return {{a.x + u.x, a.y + u.y}, std::hypot(u.x, u.y)};
}

}  // namespace

void Scenario::validate() const {
  if (gus.empty()) throw InvalidArgument("scenario has no ground users");
  if (!(altitude_m > 0) || !std::isfinite(altitude_m))
    throw InvalidArgument("altitude_m must be positive");
  if (!(area_radius_m > 0) || !std::isfinite(area_radius_m))
    throw InvalidArgument("area_radius_m must be positive");
  if (!finite(willie) || !finite(area_center))
    throw InvalidArgument("non-finite coordinate");
  if (horizontal_distance(willie, area_center) <= area_radius_m)
    throw InvalidArgument("willie must lie outside the service area");
  for (std::size_t i = 0; i < gus.size(); ++i) {
    if (!finite(gus[i])) throw InvalidArgument("non-finite GU coordinate");
    if (horizontal_distance(gus[i], area_center) > area_radius_m + 1e-9)
      throw InvalidArgument("GU " + std::to_string(i) + " lies outside the service area");
  }
}

double horizontal_distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double elevation_angle_deg(double horizontal_dist, double altitude_m) {
  if (!(altitude_m > 0)) throw InvalidArgument("altitude must be positive");
  if (horizontal_dist < 0) throw InvalidArgument("horizontal distance must be non-negative");
  if (horizontal_dist == 0) return 90.0;
  return std::atan2(altitude_m, horizontal_dist) * 180.0 / std::numbers::pi;
}

Circle min_enclosing_circle(std::span<const Point2> points) {
  if (points.empty()) throw InvalidArgument("min_enclosing_circle of an empty set");
  std::vector<Point2> p(points.begin(), points.end());
  Rng rng(0x5eb0c1a5ULL);
  std::shuffle(p.begin(), p.end(), rng);

  Circle c{p[0], 0.0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (contains(c, p[i])) continue;
    c = {p[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (contains(c, p[j])) continue;
      c = from_two(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k)
        if (!contains(c, p[k])) c = from_three(p[i], p[j], p[k]);
    }
  }
  return c;
}

Point2 centroid(std::span<const Point2> points) {
  if (points.empty()) throw InvalidArgument("centroid of an empty set");
  Point2 s;
  for (auto q : points) {
    s.x += q.x;
    s.y += q.y;
  }
  const auto n = static_cast<double>(points.size());
  return {s.x / n, s.y / n};
}

std::pair<std::size_t, double> farthest_gu(const Scenario& scenario, Point2 from) {
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t i = 0; i < scenario.gus.size(); ++i) {
    const double d = horizontal_distance(scenario.gus[i], from);
    if (d > best_d) {
      best = i;
      best_d = d;
    }
  }
  return {best, best_d};
}

Scenario sample_ppp_scenario(double density, double area_radius_m, Point2 willie,
                             double altitude_m, std::uint64_t rng_seed) {
  if (!(density > 0) || !std::isfinite(density)) throw InvalidArgument("density must be positive");
  if (!(area_radius_m > 0)) throw InvalidArgument("area radius must be positive");
  if (!(altitude_m > 0)) throw InvalidArgument("altitude must be positive");
  if (std::hypot(willie.x, willie.y) <= area_radius_m)
    throw InvalidArgument("willie must lie outside the service area");

  Rng rng(rng_seed);
  const double mean = density * std::numbers::pi * area_radius_m * area_radius_m;
  std::poisson_distribution<long> count_dist(mean);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Scenario s;
  s.willie = willie;
  s.altitude_m = altitude_m;
  s.area_radius_m = area_radius_m;
  long count = 0;
  for (int attempt = 0; attempt <= kMaxRedraws && count == 0; ++attempt) count = count_dist(rng);
  if (count == 0) throw InvalidArgument("Poisson draw stayed empty; density too small");

  s.gus.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double r = area_radius_m * std::sqrt(unit(rng));
    const double phi = 2 * std::numbers::pi * unit(rng);
    s.gus.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  return s;
}

namespace {

nlohmann::json to_json(Point2 p) { return nlohmann::json::array({p.x, p.y}); }

Point2 point_from(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(field, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["altitude_m"] = s.altitude_m;
  j["area_radius_m"] = s.area_radius_m;
  j["area_center"] = to_json(s.area_center);
  j["willie"] = to_json(s.willie);
  auto gus = nlohmann::json::array();
  for (auto g : s.gus) gus.push_back(to_json(g));
  j["gus"] = std::move(gus);
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("scenario", e.what());
  }
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw ConfigError(std::string("scenario.") + key, "missing field");
    return j.at(key);
  };
  Scenario s;
  auto number = [&](const char* key) {
    const auto& v = need(key);
    if (!v.is_number()) throw ConfigError(std::string("scenario.") + key, "expected a number");
    return v.get<double>();
  };
  s.altitude_m = number("altitude_m");
  s.area_radius_m = number("area_radius_m");
  s.area_center = j.contains("area_center") ? point_from(j["area_center"], "scenario.area_center")
                                            : Point2{};
  s.willie = point_from(need("willie"), "scenario.willie");
  const auto& gus = need("gus");
  if (!gus.is_array()) throw ConfigError("scenario.gus", "expected an array");
  for (const auto& g : gus) s.gus.push_back(point_from(g, "scenario.gus"));
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("scenario", e.what());
  }
  return s;
}

}  // namespace covcast
