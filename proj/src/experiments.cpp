#include "covcast/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "covcast/detail/parallel.hpp"
#include "covcast/error.hpp"
#include "covcast/rng.hpp"

namespace covcast {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kOhPso: return "oh_pso";
    case Strategy::kThExhaustive: return "th_exhaustive";
    case Strategy::kBaselineCenter: return "baseline_center";
  }
  return "?";
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kDensity: return "density";
    case SweepVariable::kWillieDistance: return "willie_distance";
    case SweepVariable::kEpsilon: return "epsilon";
  }
  return "?";
}

Strategy parse_strategy(std::string_view s) {
  for (auto v : {Strategy::kOhPso, Strategy::kThExhaustive, Strategy::kBaselineCenter})
    if (to_string(v) == s) return v;
  throw ConfigError("strategies", "unknown strategy '" + std::string(s) + "'");
}

SweepVariable parse_sweep_variable(std::string_view s) {
  for (auto v : {SweepVariable::kDensity, SweepVariable::kWillieDistance, SweepVariable::kEpsilon})
    if (to_string(v) == s) return v;
  throw ConfigError("sweep.variable", "unknown sweep variable '" + std::string(s) + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep.values", "must not be empty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw ConfigError("sweep.values", "must be sorted ascending");
  if (trials < 1) throw ConfigError("sweep.trials", "must be at least 1");
  if (strategies.empty()) throw ConfigError("sweep.strategies", "must not be empty");
  std::set<Strategy> seen(strategies.begin(), strategies.end());
  if (seen.size() != strategies.size())
    throw ConfigError("sweep.strategies", "contains duplicates");
}

void apply_sweep_value(SweepVariable variable, double value, SystemParams& params,
                       ScenarioConfig& scenario) {
  switch (variable) {
    case SweepVariable::kDensity: scenario.density = value; break;
    case SweepVariable::kWillieDistance: scenario.willie = {value, 0.0}; break;
    case SweepVariable::kEpsilon: params.epsilon = value; break;
  }
}

TrialOutcome run_trial(const Scenario& scenario, const SystemParams& params,
                       const std::vector<Strategy>& strategies, const PsoConfig& pso) {
  TrialOutcome out;
  out.time_s.reserve(strategies.size());
  for (Strategy s : strategies) {
    std::optional<double> t;
    try {
      switch (s) {
        case Strategy::kOhPso:
          t = solve_oh_pso(scenario, params, pso).time_s;
          break;
        case Strategy::kBaselineCenter:
          t = solve_oh_at(scenario, min_enclosing_circle(scenario.gus).center, params).time_s;
          break;
        case Strategy::kThExhaustive:
          if (scenario.gus.size() >= 2) t = select_relay(scenario, params).time_s;
          break;
      }
    } catch (const Infeasible&) {
      t.reset();
    }
    out.time_s.push_back(t);
  }
  return out;
}

namespace {

struct Accumulator {
  double sum = 0.0, comp = 0.0;  // Neumaier compensated sum
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

StrategyStats summarize(Strategy s, const std::vector<std::optional<double>>& times) {
  StrategyStats st;
  st.strategy = s;
  st.trials = static_cast<int>(times.size());
  Accumulator acc;
  int k = 0;
  for (const auto& t : times) {
    if (!t) {
      ++st.infeasible;
      continue;
    }
    acc.add(*t);
    ++k;
  }
  if (k == 0) {
    st.mean_time_s = std::numeric_limits<double>::quiet_NaN();
    st.ci95_s = std::numeric_limits<double>::quiet_NaN();
    return st;
  }
  st.mean_time_s = acc.value() / k;
  Accumulator sq;
  for (const auto& t : times)
    if (t) sq.add((*t - st.mean_time_s) * (*t - st.mean_time_s));
  st.ci95_s = k > 1 ? 1.959963984540054 * std::sqrt(sq.value() / (k - 1) / k) : 0.0;
  return st;
}

}  // namespace

std::vector<SweepResult> run_sweep(const SweepSpec& spec, const SystemParams& params,
                                   const ScenarioConfig& base, const PsoConfig& pso,
                                   unsigned workers, const ProgressFn& progress) {
  spec.validate();
  params.validate();
  pso.validate();

  std::vector<SweepResult> results;
  std::mutex progress_mutex;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    const double value = spec.values[vi];
    SystemParams p = params;
    ScenarioConfig sc = base;
    apply_sweep_value(spec.variable, value, p, sc);
    p.validate();

    const auto trials = static_cast<std::size_t>(spec.trials);
    std::vector<TrialOutcome> outcomes(trials);
    std::size_t done = 0;
    detail::parallel_for(trials, workers, [&](std::size_t t) {
      const std::uint64_t trial_seed = derive_seed(spec.seed, {vi, t});
      const Scenario scenario =
          sample_ppp_scenario(sc.density, sc.area_radius_m, sc.willie, p.altitude_m,
                              derive_seed(trial_seed, {0}));
      PsoConfig trial_pso = pso;
      trial_pso.seed = derive_seed(trial_seed, {1});
      trial_pso.workers = 1;
      outcomes[t] = run_trial(scenario, p, spec.strategies, trial_pso);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(value, static_cast<int>(++done), spec.trials);
      }
    });

    SweepResult r;
    r.variable = spec.variable;
    r.value = value;
    for (std::size_t s = 0; s < spec.strategies.size(); ++s) {
      std::vector<std::optional<double>> times(trials);
      for (std::size_t t = 0; t < trials; ++t) times[t] = outcomes[t].time_s[s];
      r.stats.push_back(summarize(spec.strategies[s], times));
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string results_to_csv(const std::vector<SweepResult>& results) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : results)
    for (const auto& s : r.stats)
      os << to_string(r.variable) << ',' << format_double(r.value) << ',' << to_string(s.strategy)
         << ',' << format_double(s.mean_time_s) << ',' << format_double(s.ci95_s) << ','
         << s.infeasible << ',' << s.trials << '\n';
  return os.str();
}

namespace {

double parse_double(std::string_view text, const std::string& field) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError(field, "not a number: '" + std::string(text) + "'");
  return v;
}

int parse_int(std::string_view text, const std::string& field) {
  int v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError(field, "not an integer: '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::vector<SweepResult> results_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader)
    throw ConfigError("csv.header", "expected '" + std::string(kCsvHeader) + "'");
  std::vector<SweepResult> out;
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    const std::string where = "csv.row" + std::to_string(row);
    if (cols.size() != 7) throw ConfigError(where, "expected 7 columns");
    const SweepVariable var = parse_sweep_variable(cols[0]);
    const double value = parse_double(cols[1], where + ".value");
    StrategyStats s;
    s.strategy = parse_strategy(cols[2]);
    s.mean_time_s = parse_double(cols[3], where + ".mean_time_s");
    s.ci95_s = parse_double(cols[4], where + ".ci95_s");
    s.infeasible = parse_int(cols[5], where + ".infeasible");
    s.trials = parse_int(cols[6], where + ".trials");
    // group consecutive rows with the same value
    if (out.empty() || out.back().variable != var ||
        format_double(out.back().value) != format_double(value))
      out.push_back({var, value, {}});
    out.back().stats.push_back(s);
  }
  return out;
}

void emit_csv(const std::vector<SweepResult>& results, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << results_to_csv(results);
  if (!f) throw Error("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// configuration documents

namespace {

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const char* key) const {
    used_.insert(key);
    return j_.contains(key);
  }

  double number(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    return v.get<double>();
  }
  double number(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::int64_t integer(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  std::string string(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }

  Point2 point(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ConfigError(field(key), "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  const json& at(const char* key) const {
    used_.insert(key);
    if (!j_.contains(key)) throw ConfigError(field(key), "missing required field");
    return j_.at(key);
  }

  std::string field(const char* key) const { return path_ + "." + key; }

  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw ConfigError(path_ + "." + it.key(), "unknown field");
  }

 private:
  const json& j_;
  std::string path_;
  mutable std::set<std::string> used_;
};

double noise_watts(const Section& s, const char* watts_key, const char* dbm_key) {
  const bool w = s.has(watts_key), d = s.has(dbm_key);
  if (w && d) throw ConfigError(s.field(watts_key), std::string("conflicts with ") + dbm_key);
  if (d) return dbm_to_watts(s.number(dbm_key));
  return s.number(watts_key);
}

SystemParams parse_system(const json& j) {
  Section s(j, "system");
  SystemParams p;
  p.n = s.number("n");
  p.rate = s.number("rate");
  p.payload_bits = s.number("payload_bits");
  p.epsilon = s.number("epsilon");
  p.altitude_m = s.number("altitude_m");
  p.sigma_g2_w = noise_watts(s, "sigma_g2_w", "sigma_g2_dbm");
  p.sigma_w2_w = noise_watts(s, "sigma_w2_w", "sigma_w2_dbm");
  p.slot_s = s.number("slot_s", p.slot_s);
  p.relay_power_w = s.number("relay_power_w", p.relay_power_w);
  p.rho_min = s.number("rho_min", p.rho_min);
  p.rho_max = s.number("rho_max", p.rho_max);
  if (s.has("channel")) {
    Section c(s.at("channel"), "system.channel");
    p.channel.s_curve_e = c.number("s_curve_e");
    p.channel.s_curve_f = c.number("s_curve_f");
    p.channel.alpha_los = c.number("alpha_los");
    p.channel.alpha_g2g = c.number("alpha_g2g");
    c.reject_unknown();
  }
  s.reject_unknown();
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("system", e.what());
  }
  return p;
}

void parse_sweep(const json& j, SweepSpec& spec, ScenarioConfig& gen) {
  Section s(j, "sweep");
  spec.variable = parse_sweep_variable(s.string("variable"));
  const auto& vals = s.at("values");
  if (!vals.is_array()) throw ConfigError("sweep.values", "expected an array");
  spec.values.clear();
  for (const auto& v : vals) {
    if (!v.is_number()) throw ConfigError("sweep.values", "expected numbers");
    spec.values.push_back(v.get<double>());
  }
  if (s.has("trials")) spec.trials = static_cast<int>(s.integer("trials"));
  if (s.has("seed")) {
    const auto& v = s.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ConfigError("sweep.seed", "expected a non-negative integer");
    spec.seed = v.get<std::uint64_t>();
  }
  if (s.has("strategies")) {
    const auto& arr = s.at("strategies");
    if (!arr.is_array()) throw ConfigError("sweep.strategies", "expected an array");
    spec.strategies.clear();
    for (const auto& v : arr) {
      if (!v.is_string()) throw ConfigError("sweep.strategies", "expected strings");
      spec.strategies.push_back(parse_strategy(v.get<std::string>()));
    }
  }
  gen.density = s.number("density", gen.density);
  gen.area_radius_m = s.number("area_radius_m", gen.area_radius_m);
  if (s.has("willie")) gen.willie = s.point("willie");
  s.reject_unknown();
  spec.validate();
}

PsoConfig parse_pso(const json& j) {
  Section s(j, "pso");
  PsoConfig p;
  if (s.has("particles")) p.particles = static_cast<int>(s.integer("particles"));
  if (s.has("iterations")) p.iterations = static_cast<int>(s.integer("iterations"));
  p.inertia_w = s.number("inertia_w", p.inertia_w);
  p.accel_c1 = s.number("accel_c1", p.accel_c1);
  p.accel_c2 = s.number("accel_c2", p.accel_c2);
  p.vmax_fraction = s.number("vmax_fraction", p.vmax_fraction);
  if (s.has("seed")) p.seed = static_cast<std::uint64_t>(s.integer("seed"));
  s.reject_unknown();
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("pso", e.what());
  }
  return p;
}

ordered_json point_json(Point2 p) { return ordered_json::array({p.x, p.y}); }

}  // namespace

Config default_config() {
  Config c;
  c.sweep.variable = SweepVariable::kEpsilon;
  c.sweep.values = {0.05, 0.1, 0.15, 0.2};
  return c;
}

Config config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", e.what());
  }
  Section root(j, "config");
  Config c = default_config();
  c.system = parse_system(root.at("system"));
  if (root.has("sweep")) parse_sweep(root.at("sweep"), c.sweep, c.scenario_gen);
  if (root.has("pso")) c.pso = parse_pso(root.at("pso"));
  if (root.has("scenario")) c.scenario = scenario_from_json(root.at("scenario").dump());
  root.reject_unknown();
  return c;
}

std::string config_to_json(const Config& c) {
  ordered_json sys;
  const auto& p = c.system;
  sys["n"] = p.n;
  sys["rate"] = p.rate;
  sys["payload_bits"] = p.payload_bits;
  sys["slot_s"] = p.slot_s;
  sys["epsilon"] = p.epsilon;
  sys["sigma_g2_w"] = p.sigma_g2_w;
  sys["sigma_w2_w"] = p.sigma_w2_w;
  sys["relay_power_w"] = p.relay_power_w;
  sys["rho_min"] = p.rho_min;
  sys["rho_max"] = p.rho_max;
  sys["altitude_m"] = p.altitude_m;
  sys["channel"] = {{"s_curve_e", p.channel.s_curve_e},
                    {"s_curve_f", p.channel.s_curve_f},
                    {"alpha_los", p.channel.alpha_los},
                    {"alpha_g2g", p.channel.alpha_g2g}};

  ordered_json sweep;
  sweep["variable"] = std::string(to_string(c.sweep.variable));
  sweep["values"] = c.sweep.values;
  sweep["trials"] = c.sweep.trials;
  sweep["seed"] = c.sweep.seed;
  auto strategies = ordered_json::array();
  for (auto s : c.sweep.strategies) strategies.push_back(std::string(to_string(s)));
  sweep["strategies"] = std::move(strategies);
  sweep["density"] = c.scenario_gen.density;
  sweep["area_radius_m"] = c.scenario_gen.area_radius_m;
  sweep["willie"] = point_json(c.scenario_gen.willie);

  ordered_json pso;
  pso["particles"] = c.pso.particles;
  pso["iterations"] = c.pso.iterations;
  pso["inertia_w"] = c.pso.inertia_w;
  pso["accel_c1"] = c.pso.accel_c1;
  pso["accel_c2"] = c.pso.accel_c2;
  pso["vmax_fraction"] = c.pso.vmax_fraction;
  pso["seed"] = c.pso.seed;

  ordered_json root;
  root["system"] = std::move(sys);
  root["sweep"] = std::move(sweep);
  root["pso"] = std::move(pso);
  if (c.scenario) root["scenario"] = ordered_json::parse(scenario_to_json(*c.scenario));
  return root.dump(2) + "\n";
}

Config load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return config_from_json(ss.str());
}

}  // namespace covcast
