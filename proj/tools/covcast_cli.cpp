// covcast: covert multicast planning and Monte-Carlo sweeps from the shell.
//
//   covcast sample-scenario [--config c.json] [--seed S] [--out scenario.json]
//   covcast solve-oh [--config c.json] [--scenario s.json] [--hover X Y] [--seed S] [--out plan.json]
//   covcast solve-th [--config c.json] [--scenario s.json] [--relay I] [--out plan.json]
//   covcast sweep --config c.json [--seed S] [--trials N] [--strategies a,b] [--threads T]
//                 [--out results.csv] [--quiet]
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
// 3 every candidate infeasible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covcast/error.hpp"
#include "covcast/experiments.hpp"
#include "covcast/planner.hpp"
#include "covcast/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct Options {
  std::string config_path;
  std::string scenario_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string strategies;
  unsigned threads = 1;
  bool quiet = false;
  std::vector<double> hover;
  std::optional<std::size_t> relay;
};

covcast::Config load(const Options& o) {
  return o.config_path.empty() ? covcast::default_config() : covcast::load_config(o.config_path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw covcast::ConfigError("scenario", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw covcast::Error("cannot open '" + o.out_path + "' for writing");
  f << text;
}

// Scenario precedence: --scenario file, the config's scenario section, then a
// fresh draw from the config's generator settings.
covcast::Scenario resolve_scenario(const Options& o, const covcast::Config& c) {
  if (!o.scenario_path.empty()) return covcast::scenario_from_json(read_file(o.scenario_path));
  if (c.scenario) return *c.scenario;
  const auto& g = c.scenario_gen;
  return covcast::sample_ppp_scenario(g.density, g.area_radius_m, g.willie, c.system.altitude_m,
                                      o.seed.value_or(c.sweep.seed));
}

nlohmann::ordered_json point(covcast::Point2 p) { return {p.x, p.y}; }

int cmd_sample(const Options& o) {
  const auto c = load(o);
  write_output(o, covcast::scenario_to_json(resolve_scenario(o, c)) + "\n");
  return 0;
}

int cmd_solve_oh(const Options& o) {
  auto c = load(o);
  if (o.seed) c.pso.seed = *o.seed;
  c.pso.workers = o.threads;
  const auto s = resolve_scenario(o, c);
  const auto plan = o.hover.empty()
                        ? covcast::solve_oh_pso(s, c.system, c.pso)
                        : covcast::solve_oh_at(s, {o.hover[0], o.hover[1]}, c.system);
  nlohmann::ordered_json j;
  j["scheme"] = "oh";
  j["power_w"] = plan.power_w;
  j["rho1"] = plan.rho1;
  j["hover"] = point(plan.hover);
  j["worst_gu"] = plan.worst_gu;
  j["gamma_worst"] = plan.gamma_worst;
  j["regime"] = covcast::regime_name(plan.regime);
  j["time_slots"] = plan.time_slots;
  j["time_s"] = plan.time_s;
  write_output(o, j.dump(2) + "\n");
  return 0;
}

int cmd_solve_th(const Options& o) {
  const auto c = load(o);
  const auto s = resolve_scenario(o, c);
  const auto plan = o.relay ? covcast::solve_th_at(s, *o.relay, c.system)
                            : covcast::select_relay(s, c.system, o.threads);
  nlohmann::ordered_json j;
  j["scheme"] = "th";
  j["power_w"] = plan.power_w;
  j["rho1"] = plan.rho1;
  j["relay"] = plan.relay;
  j["hover"] = point(s.gus[plan.relay]);
  j["worst_gu"] = plan.worst_gu;
  j["kappa_rw"] = plan.kappa_rw;
  j["gamma_ar"] = plan.gamma_ar;
  j["gamma_arg"] = plan.gamma_arg;
  j["time_slots"] = plan.time_slots;
  j["time_s"] = plan.time_s;
  write_output(o, j.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const Options& o) {
  auto c = load(o);
  if (o.seed) c.sweep.seed = *o.seed;
  if (o.trials) c.sweep.trials = *o.trials;
  if (!o.strategies.empty()) {
    c.sweep.strategies.clear();
    std::stringstream ss(o.strategies);
    for (std::string tok; std::getline(ss, tok, ',');)
      c.sweep.strategies.push_back(covcast::parse_strategy(tok));
  }
  covcast::ProgressFn progress;
  if (!o.quiet)
    progress = [](double value, int trial, int trials) {
      std::cerr << "value=" << covcast::format_double(value) << " trial=" << trial << "/"
                << trials << "\n";
    };
  const auto results =
      covcast::run_sweep(c.sweep, c.system, c.scenario_gen, c.pso, o.threads, progress);
  write_output(o, covcast::results_to_csv(results));
  bool any_feasible = false;
  for (const auto& r : results)
    for (const auto& st : r.stats) any_feasible |= st.infeasible < st.trials;
  return any_feasible ? 0 : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covert UAV multicast planner and Monte-Carlo simulator"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_path, "Output path (default: stdout)");
    sub->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { o.seed = v; },
                                            "Random seed");
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* sample = app.add_subcommand("sample-scenario", "Draw a Poisson GU layout");
  common(sample);

  auto* oh = app.add_subcommand("solve-oh", "One-hop plan (PSO hover search)");
  common(oh);
  oh->add_option("--scenario", o.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
  oh->add_option("--hover", o.hover, "Fixed hover position X Y instead of PSO")->expected(2);

  auto* th = app.add_subcommand("solve-th", "Two-hop plan (exhaustive relay selection)");
  common(th);
  th->add_option("--scenario", o.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
  th->add_option_function<std::size_t>("--relay", [&](std::size_t v) { o.relay = v; },
                                       "Evaluate this relay only");

  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo parameter sweep to CSV");
  common(sweep);
  sweep->add_option_function<int>("--trials", [&](int v) { o.trials = v; }, "Trials per value")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--strategies", o.strategies,
                    "Comma list of oh_pso,th_exhaustive,baseline_center");
  sweep->add_flag("--quiet", o.quiet, "Suppress progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (app.got_subcommand(sample)) return cmd_sample(o);
    if (app.got_subcommand(oh)) return cmd_solve_oh(o);
    if (app.got_subcommand(th)) return cmd_solve_th(o);
    if (app.got_subcommand(sweep)) return cmd_sweep(o);
  } catch (const covcast::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const covcast::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const covcast::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
