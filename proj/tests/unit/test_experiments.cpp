#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "covcast/error.hpp"
#include "covcast/experiments.hpp"
#include "covcast/params.hpp"

using namespace covcast;

namespace {

const char* kMinimal = R"({
  "system": {"n": 100, "rate": 0.1, "payload_bits": 1e6, "epsilon": 0.1, "altitude_m": 500,
             "sigma_g2_dbm": -70, "sigma_w2_dbm": -70}
})";

std::string field_of(const std::string& text) {
  try {
    config_from_json(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

PsoConfig quick_pso() {
  PsoConfig p;
  p.particles = 10;
  p.iterations = 10;
  return p;
}

}  // namespace

TEST_CASE("dbm_to_watts") {
  CHECK(dbm_to_watts(-70) == 1e-10);
  CHECK(dbm_to_watts(30) == 1.0);
  CHECK(dbm_to_watts(0) == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("enum names round trip") {
  for (auto s : {Strategy::kOhPso, Strategy::kThExhaustive, Strategy::kBaselineCenter})
    CHECK(parse_strategy(to_string(s)) == s);
  for (auto v : {SweepVariable::kDensity, SweepVariable::kWillieDistance, SweepVariable::kEpsilon})
    CHECK(parse_sweep_variable(to_string(v)) == v);
  CHECK(to_string(Strategy::kOhPso) == "oh_pso");
  CHECK(to_string(SweepVariable::kWillieDistance) == "willie_distance");
  CHECK_THROWS_AS(parse_strategy("greedy"), ConfigError);
}

TEST_CASE("default configuration carries the reference constants") {
  const Config c = default_config();
  const auto& p = c.system;
  CHECK(p.n == 100);
  CHECK(p.rate == 0.1);
  CHECK(p.epsilon == 0.1);
  CHECK(p.altitude_m == 500);
  CHECK(p.payload_bits == 1e6);
  CHECK(p.slot_s == 1e-3);
  CHECK(p.channel.s_curve_e == 4.88);
  CHECK(p.channel.s_curve_f == 0.429);
  CHECK(p.channel.alpha_los == -2);
  CHECK(p.channel.alpha_g2g == -3);
  CHECK(p.sigma_g2_w == 1e-10);
  CHECK(p.sigma_w2_w == 1e-10);
  CHECK(c.scenario_gen.willie == Point2{600, 0});
  CHECK(c.scenario_gen.area_radius_m == 500);
  CHECK(c.sweep.trials == 200);

  const Config m = config_from_json(kMinimal);
  CHECK(m.system.sigma_g2_w == 1e-10);
  CHECK(m.system.sigma_w2_w == 1e-10);
}

TEST_CASE("config JSON round trip is byte stable") {
  Config c = default_config();
  c.sweep.variable = SweepVariable::kWillieDistance;
  c.sweep.values = {600, 800, 1000};
  c.sweep.seed = 12345678901234ull;
  c.system.relay_power_w = 0.02;
  c.pso.iterations = 17;
  c.scenario = sample_ppp_scenario(c.scenario_gen.density, 500, {600, 0}, 500, 3);
  const std::string a = config_to_json(c);
  const std::string b = config_to_json(config_from_json(a));
  CHECK(a == b);
  const Config back = config_from_json(a);
  CHECK(back.sweep.seed == c.sweep.seed);
  CHECK(back.pso.iterations == 17);
  CHECK(back.scenario->gus == c.scenario->gus);
}

TEST_CASE("config errors name the field") {
  CHECK(field_of("{}") == "config.system");
  CHECK(field_of(R"({"system": {"rate": 0.1}})") == "system.n");
  CHECK(field_of(R"({"system": {"n": 100, "rate": 0.1, "payload_bits": 1e6, "epsilon": 0.1,
                   "altitude_m": 500, "sigma_g2_w": 1e-10}})") == "system.sigma_w2_w");
  CHECK(field_of(R"({"system": {"n": 100, "rate": 0.1, "payload_bits": 1e6, "epsilon": 0.1,
                   "altitude_m": 500, "sigma_g2_w": 1e-10, "sigma_w2_w": 1e-10, "bogus": 1}})") ==
        "system.bogus");
  CHECK(field_of(R"({"system": {"n": "x", "rate": 0.1}})") == "system.n");
  CHECK(field_of("{") == "config");

  std::string bad_sweep = kMinimal;
  bad_sweep.insert(bad_sweep.rfind('}'), R"(, "sweep": {"variable": "epsilon", "values": [0.2, 0.1]})");
  CHECK(field_of(bad_sweep) == "sweep.values");

  std::string bad_var = kMinimal;
  bad_var.insert(bad_var.rfind('}'), R"(, "sweep": {"variable": "lambda", "values": [1]})");
  CHECK(field_of(bad_var) == "sweep.variable");

  std::string bad_eps = kMinimal;
  bad_eps.replace(bad_eps.find("0.1, \"alt"), 3, "0.7");
  CHECK(field_of(bad_eps) == "system");

  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("SweepSpec validation") {
  SweepSpec s;
  s.values = {0.1};
  CHECK_NOTHROW(s.validate());
  s.values = {};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.values = {0.2, 0.1};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.values = {0.1};
  s.trials = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.trials = 1;
  s.strategies = {Strategy::kOhPso, Strategy::kOhPso};
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("apply_sweep_value") {
  SystemParams p;
  ScenarioConfig sc;
  apply_sweep_value(SweepVariable::kEpsilon, 0.2, p, sc);
  CHECK(p.epsilon == 0.2);
  apply_sweep_value(SweepVariable::kWillieDistance, 900, p, sc);
  CHECK(sc.willie == Point2{900, 0});
  apply_sweep_value(SweepVariable::kDensity, 1e-5, p, sc);
  CHECK(sc.density == 1e-5);
}

TEST_CASE("run_trial") {
  const SystemParams p;
  const std::vector<Strategy> all{Strategy::kOhPso, Strategy::kThExhaustive,
                                  Strategy::kBaselineCenter};
  SUBCASE("single GU: two-hop is infeasible") {
    Scenario s;
    s.gus = {{30, 40}};
    s.willie = {600, 0};
    s.altitude_m = 500;
    s.area_radius_m = 500;
    const auto out = run_trial(s, p, all, quick_pso());
    REQUIRE(out.time_s.size() == 3);
    CHECK(out.time_s[0].has_value());
    CHECK_FALSE(out.time_s[1].has_value());
    CHECK(out.time_s[2].has_value());
  }
  SUBCASE("PSO never loses to the baseline; reruns are identical") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = sample_ppp_scenario(default_config().scenario_gen.density, 500, {600, 0}, 500,
                                         seed);
      const auto a = run_trial(s, p, all, quick_pso());
      const auto b = run_trial(s, p, all, quick_pso());
      CHECK(a.time_s == b.time_s);
      if (a.time_s[0] && a.time_s[2]) CHECK(*a.time_s[0] <= *a.time_s[2]);
      if (a.time_s[2]) CHECK(a.time_s[0].has_value());
    }
  }
}

TEST_CASE("run_sweep shape, determinism and CSV") {
  SweepSpec spec;
  spec.variable = SweepVariable::kEpsilon;
  spec.values = {0.05, 0.1};
  spec.trials = 6;
  spec.seed = 77;
  const SystemParams p;
  const ScenarioConfig sc;
  int calls = 0;
  const auto r1 = run_sweep(spec, p, sc, quick_pso(), 1, [&](double, int, int n) {
    ++calls;
    CHECK(n == 6);
  });
  CHECK(calls == 12);
  REQUIRE(r1.size() == 2);
  for (const auto& r : r1) {
    REQUIRE(r.stats.size() == 3);
    for (const auto& st : r.stats) {
      CHECK(st.trials == 6);
      CHECK(st.infeasible <= st.trials);
    }
  }
  CHECK(r1[1].value == 0.1);

  const auto r4 = run_sweep(spec, p, sc, quick_pso(), 4);
  const std::string csv = results_to_csv(r1);
  CHECK(csv == results_to_csv(r4));

  std::istringstream lines(csv);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 6);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);

  // write -> read -> write is byte identical
  CHECK(results_to_csv(results_from_csv(csv)) == csv);
  const auto path = std::filesystem::temp_directory_path() / "covcast_test_results.csv";
  emit_csv(r1, path.string());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == csv);
  std::filesystem::remove(path);

  spec.seed = 78;
  CHECK(results_to_csv(run_sweep(spec, p, sc, quick_pso(), 2)) != csv);
}

TEST_CASE("CSV with infeasible-only columns") {
  SweepResult r;
  r.variable = SweepVariable::kDensity;
  r.value = 1.2732395447351627e-05;
  StrategyStats st;
  st.strategy = Strategy::kThExhaustive;
  st.mean_time_s = std::nan("");
  st.ci95_s = std::nan("");
  st.infeasible = 4;
  st.trials = 4;
  r.stats = {st};
  const std::string csv = results_to_csv({r});
  CHECK(csv.find("density,1.2732395447351627e-05,th_exhaustive,nan,nan,4,4") !=
        std::string::npos);
  CHECK(results_to_csv(results_from_csv(csv)) == csv);
  CHECK_THROWS_AS(results_from_csv("a,b\n"), ConfigError);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1e-10, 256.87994140313072, 1.0 / 3, 600.0})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(600) == "600");
}
