#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covcast/params.hpp"
#include "covcast/planner.hpp"
#include "covcast/pso.hpp"
#include "covcast/scenario.hpp"

namespace covcast {

enum class Strategy { kOhPso, kThExhaustive, kBaselineCenter };
enum class SweepVariable { kDensity, kWillieDistance, kEpsilon };

std::string_view to_string(Strategy s);
std::string_view to_string(SweepVariable v);
Strategy parse_strategy(std::string_view s);
SweepVariable parse_sweep_variable(std::string_view s);

/// How the random GU layout of each trial is drawn. Willie sits at `willie`
/// except in distance sweeps, where it is placed at (d, 0).
struct ScenarioConfig {
  double density = 4e-5 / 3.14159265358979323846;  // per m^2
  double area_radius_m = 500;
  Point2 willie{600, 0};
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::kEpsilon;
  std::vector<double> values;
  int trials = 200;
  std::uint64_t seed = 1;
  std::vector<Strategy> strategies{Strategy::kOhPso, Strategy::kThExhaustive,
                                   Strategy::kBaselineCenter};

  void validate() const;
};

struct StrategyStats {
  Strategy strategy;
  double mean_time_s = 0.0;  // over feasible trials; NaN if none
  double ci95_s = 0.0;       // normal-approximation half-width
  int infeasible = 0;
  int trials = 0;
};

struct SweepResult {
  SweepVariable variable;
  double value = 0.0;
  std::vector<StrategyStats> stats;  // in SweepSpec::strategies order
};

/// Per-strategy transmission time in seconds; nullopt if infeasible.
struct TrialOutcome {
  std::vector<std::optional<double>> time_s;
};

TrialOutcome run_trial(const Scenario& scenario, const SystemParams& params,
                       const std::vector<Strategy>& strategies, const PsoConfig& pso);

using ProgressFn = std::function<void(double value, int trial, int trials)>;

/// Runs `spec.trials` fresh scenarios per swept value. Trial seeds derive
/// from (spec.seed, value index, trial index), so output is identical for
/// any `workers`.
std::vector<SweepResult> run_sweep(const SweepSpec& spec, const SystemParams& params,
                                   const ScenarioConfig& base, const PsoConfig& pso,
                                   unsigned workers = 1, const ProgressFn& progress = {});

/// Applies the swept variable's value to copies of the inputs.
void apply_sweep_value(SweepVariable variable, double value, SystemParams& params,
                       ScenarioConfig& scenario);

inline constexpr std::string_view kCsvHeader =
    "variable,value,strategy,mean_time_s,ci95_s,infeasible,trials";

std::string results_to_csv(const std::vector<SweepResult>& results);
std::vector<SweepResult> results_from_csv(const std::string& text);
void emit_csv(const std::vector<SweepResult>& results, const std::string& path);

/// Full configuration document.
struct Config {
  SystemParams system;
  SweepSpec sweep;
  ScenarioConfig scenario_gen;
  PsoConfig pso;
  std::optional<Scenario> scenario;
};

/// Reference evaluation constants with an epsilon sweep.
Config default_config();

Config config_from_json(const std::string& text);
std::string config_to_json(const Config& config);
Config load_config(const std::string& path);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace covcast
