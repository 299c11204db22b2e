#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "covcast/channel.hpp"
#include "covcast/covertness.hpp"
#include "covcast/error.hpp"
#include "covcast/numerics.hpp"
#include "covcast/planner.hpp"
#include "oracles.hpp"

using namespace covcast;

namespace {

Scenario make(std::vector<Point2> gus, Point2 willie = {600, 0}) {
  Scenario s;
  s.gus = std::move(gus);
  s.willie = willie;
  s.altitude_m = 500;
  s.area_radius_m = 500;
  return s;
}

Scenario random_scenario(std::uint64_t seed) {
  return sample_ppp_scenario(4e-5 / std::numbers::pi, 500, {600, 0}, 500, seed);
}

}  // namespace

TEST_CASE("relay at the origin") {
  const SystemParams p;
  const auto s = make({{0, 0}, {200, 0}, {-100, 300}});
  const auto plan = solve_th_at(s, 0, p);
  CHECK(plan.relay == 0);
  CHECK(plan.worst_gu == 2);
  CHECK(plan.rho1 == 0.5);
  CHECK(plan.kappa_rw == doctest::Approx(2.16).epsilon(1e-12));

  const double h_aw = a2g_gain(600, 500, p.channel);
  const double oh = covert_power_oh(h_aw, p.sigma_w2_w, PriorPair(0.5), p.epsilon, p.n);
  CHECK(plan.power_w == doctest::Approx(oh / 0.735431550450494).epsilon(1e-12));
  CHECK(plan.power_w > oh);

  const double h_ar = a2g_gain(0, 500, p.channel);
  CHECK(h_ar == doctest::Approx(4.0e-6).epsilon(1e-12));
  CHECK(plan.gamma_ar == doctest::Approx(plan.power_w * h_ar / p.sigma_g2_w));

  const double l = std::hypot(100.0, 300.0);
  const double mrc =
      (plan.power_w * a2g_gain(l, 500, p.channel) + p.relay_power_w * std::pow(l, -3.0)) /
      p.sigma_g2_w;
  CHECK(plan.gamma_arg == doctest::Approx(mrc).epsilon(1e-14));
  CHECK(plan.time_slots ==
        doctest::Approx(p.payload_bits / effective_throughput_th(plan.gamma_ar, plan.gamma_arg,
                                                                 0.5, p.fbl())));
}

TEST_CASE("warden SNR expectation under Rayleigh relay interference") {
  // E[P H / (P_r l^a |h|^2 + s)] over |h|^2 ~ Exp(1) equals (P H / s) * f(kappa)
  const SystemParams p;
  const double h_aw = a2g_gain(600, 500, p.channel);
  const double pa = 5e-6;
  for (double l_rw : {400.0, 600.0, 1000.0}) {
    const double kappa = relay_kappa(p.sigma_w2_w, p.relay_power_w, l_rw, -3);
    const double closed = pa * h_aw / p.sigma_w2_w * rayleigh_interference_factor(kappa);
    FadingSampler fade(static_cast<std::uint64_t>(l_rw));
    double acc = 0;
    const int draws = 1'000'000;
    for (int i = 0; i < draws; ++i)
      acc += pa * h_aw / (p.relay_power_w * std::pow(l_rw, -3.0) * fade() + p.sigma_w2_w);
    CHECK(acc / draws == doctest::Approx(closed).epsilon(0.01));
    // and against direct quadrature of the same expectation
    const double quad = oracle::integrate(
        [&](double x) { return std::exp(-x) / (1 + x / kappa); }, 0, 60, 1e-13);
    CHECK(rayleigh_interference_factor(kappa) == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("mean-fading relay link equals the expected linear throughput") {
  // the linear-band throughput is affine in gamma_arg, so averaging over the
  // relay fade equals plugging in the mean fade
  const SystemParams p;
  const auto c = p.fbl();
  const double gamma_ar = 0.12, direct = 0.02, relay_mean = 0.08;
  auto affine = [&](double g_arg) {
    return 0.25 * 0.5 * c.n * c.rate * (1 + 2 * c.varsigma * (gamma_ar - c.vartheta)) *
           (1 + 2 * c.varsigma * (g_arg - c.vartheta));
  };
  FadingSampler fade(17);
  double acc = 0;
  const int draws = 1'000'000;
  for (int i = 0; i < draws; ++i) acc += affine(direct + relay_mean * fade());
  CHECK(acc / draws == doctest::Approx(throughput_th(gamma_ar, direct + relay_mean, 0.5, c))
                           .epsilon(0.005));
}

TEST_CASE("argument checks") {
  const SystemParams p;
  CHECK_THROWS_AS(solve_th_at(make({{0, 0}}), 0, p), InvalidArgument);
  CHECK_THROWS_AS(solve_th_at(make({{0, 0}, {10, 0}}), 2, p), InvalidArgument);
  CHECK_THROWS_AS(select_relay(make({{0, 0}}), p), InvalidArgument);
}

TEST_CASE("infeasible relays") {
  SystemParams p;
  p.epsilon = 0.001;
  p.relay_power_w = 1e-6;
  const auto s = make({{-450, 0}, {450, 0}}, {510, 0});
  CHECK_THROWS_AS(solve_th_at(s, 1, p), Infeasible);
}

TEST_CASE("select_relay is the exhaustive minimum") {
  const SystemParams p;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto s = random_scenario(seed);
    if (s.gus.size() < 2) continue;
    double best = INFINITY;
    std::size_t best_r = 0;
    for (std::size_t r = 0; r < s.gus.size(); ++r) {
      try {
        const auto plan = solve_th_at(s, r, p);
        CHECK(plan.relay != plan.worst_gu);
        if (plan.time_slots < best) best = plan.time_slots, best_r = r;
      } catch (const Infeasible&) {
      }
    }
    if (!std::isfinite(best)) {
      CHECK_THROWS_AS(select_relay(s, p), AllInfeasible);
      continue;
    }
    const auto sel = select_relay(s, p);
    CHECK(sel.time_slots == best);
    CHECK(sel.relay == best_r);
    CHECK(select_relay(s, p, 4).relay == best_r);
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("two GUs: the better of the two candidates") {
  const SystemParams p;
  const auto s = make({{-300, 0}, {200, 100}});
  const auto a = solve_th_at(s, 0, p), b = solve_th_at(s, 1, p);
  const auto sel = select_relay(s, p);
  CHECK(sel.time_slots == std::min(a.time_slots, b.time_slots));
  CHECK(sel.relay == (b.time_slots < a.time_slots ? 1u : 0u));
}

TEST_CASE("relay choice avoids the GU next to the warden") {
  // one GU close to the warden, a cluster on the far side
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ur(420, 495), ua(-0.3, 0.3), uc(-100, 100);
  std::uniform_int_distribution<int> count(4, 8);
  int near_chosen = 0, trials = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Point2> gus;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) gus.push_back({-300 + uc(rng), uc(rng)});
    const double r = ur(rng), a = ua(rng);
    const std::size_t near =
        std::uniform_int_distribution<std::size_t>(0, gus.size())(rng);
    gus.insert(gus.begin() + static_cast<std::ptrdiff_t>(near),
               Point2{r * std::cos(a), r * std::sin(a)});
    const auto s = make(gus);

    // at the default relay power both hops are error-free for every
    // candidate, so all relays tie at the half-prior floor
    const SystemParams def;
    for (std::size_t i = 0; i < s.gus.size(); ++i) {
      try {
        CHECK(solve_th_at(s, i, def).time_slots ==
              doctest::Approx(def.payload_bits / (0.5 * def.n * def.rate)).epsilon(1e-12));
      } catch (const Infeasible&) {
      }
    }

    SystemParams weak;
    weak.relay_power_w = 1e-3;
    try {
      if (select_relay(s, weak).relay == near) ++near_chosen;
      ++trials;
    } catch (const AllInfeasible&) {
    }
  }
  REQUIRE(trials > 150);
  CHECK(near_chosen <= trials / 20);
}
