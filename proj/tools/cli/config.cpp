#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace cli {

namespace {

using nlohmann::json;

const std::set<std::string> kRunKeys{"base_seed", "n_trials", "workers", "window_km", "backhaul_demand",
                                      "targets", "sweep", "series", "power_control", "description"};

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError("field '" + field + "' must be a number");
  return j.get<double>();
}

long long integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError("field '" + field + "' must be an integer");
  return j.get<long long>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError("field '" + field + "' must be a non-empty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

bool is_param_field(const std::string& name) {
  for (std::size_t i = 0; i < mcell_param_count(); ++i)
    if (name == mcell_param_name(i)) return true;
  return false;
}

Axis parse_axis(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError("field '" + field + "' must be an object");
  for (const auto& [k, _] : j.items())
    if (k != "axis" && k != "values" && k != "start" && k != "stop" && k != "points")
      throw ConfigError("unknown field '" + field + "." + k + "'");
  Axis a;
  if (!j.contains("axis") || !j["axis"].is_string())
    throw ConfigError("missing required field '" + field + ".axis'");
  a.name = j["axis"].get<std::string>();
  if (!is_param_field(a.name)) throw ConfigError("field '" + field + ".axis': unknown parameter '" + a.name + "'");
  if (j.contains("values")) {
    if (j.contains("start") || j.contains("stop") || j.contains("points"))
      throw ConfigError("field '" + field + "': give either values or start/stop/points");
    a.values = numbers(j["values"], field + ".values");
    return a;
  }
  for (const char* k : {"start", "stop", "points"})
    if (!j.contains(k)) throw ConfigError("missing required field '" + field + "." + k + "'");
  const double start = number(j["start"], field + ".start");
  const double stop = number(j["stop"], field + ".stop");
  const long long n = integer(j["points"], field + ".points");
  if (n < 1) throw ConfigError("field '" + field + ".points' must be >= 1");
  for (long long i = 0; i < n; ++i)
    a.values.push_back(n == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1));
  return a;
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  cfg.path = path;
  mcell_params* raw = nullptr;
  check(mcell_params_create(&raw));
  cfg.params = Params(raw);

  if (doc.contains("theta") && doc.contains("theta_db"))
    throw ConfigError("fields 'theta' and 'theta_db' are mutually exclusive");
  if (doc.contains("k_factor") && doc.contains("k_factor_db"))
    throw ConfigError("fields 'k_factor' and 'k_factor_db' are mutually exclusive");

  for (const auto& [key, value] : doc.items()) {
    if (kRunKeys.count(key)) continue;
    if (!is_param_field(key)) throw ConfigError("unknown field '" + key + "'");
    const double v = number(value, key);
    if (mcell_params_set(cfg.params.get(), key.c_str(), v) != MCELL_OK)
      throw ConfigError(std::string(mcell_last_error()));
  }
  for (std::size_t i = 0; i < mcell_param_count(); ++i) {
    if (!mcell_param_required(i)) continue;
    const std::string name = mcell_param_name(i);
    const bool present = doc.contains(name) || (name == "theta_db" && doc.contains("theta"));
    if (!present) throw ConfigError("missing required field '" + name + "'");
  }

  if (overrides.seed) {
    cfg.base_seed = *overrides.seed;
  } else if (doc.contains("base_seed")) {
    if (!doc["base_seed"].is_number_unsigned() && !doc["base_seed"].is_number_integer())
      throw ConfigError("field 'base_seed' must be a non-negative integer");
    if (doc["base_seed"].is_number_integer() && doc["base_seed"].get<long long>() < 0)
      throw ConfigError("field 'base_seed' must be a non-negative integer");
    cfg.base_seed = doc["base_seed"].get<std::uint64_t>();
  } else {
    throw ConfigError("missing required field 'base_seed'");
  }

  if (doc.contains("n_trials")) cfg.n_trials = integer(doc["n_trials"], "n_trials");
  if (overrides.trials) cfg.n_trials = *overrides.trials;
  if (cfg.n_trials < 1) throw ConfigError("field 'n_trials' must be >= 1");

  if (doc.contains("workers")) cfg.workers = static_cast<int>(integer(doc["workers"], "workers"));
  if (overrides.workers) cfg.workers = *overrides.workers;
  if (cfg.workers < 0) throw ConfigError("field 'workers' must be >= 0");

  if (doc.contains("window_km")) {
    const auto w = numbers(doc["window_km"], "window_km");
    if (w.size() != 2 || !(w[0] > 0) || !(w[1] > 0))
      throw ConfigError("field 'window_km' must be two positive numbers");
    cfg.window_km_x = w[0];
    cfg.window_km_y = w[1];
  }
  if (doc.contains("backhaul_demand")) {
    cfg.backhaul_demand = number(doc["backhaul_demand"], "backhaul_demand");
    if (!(cfg.backhaul_demand >= 0.0 && cfg.backhaul_demand <= 1.0))
      throw ConfigError("field 'backhaul_demand' must lie in [0, 1]");
  }
  if (doc.contains("targets")) {
    const auto& t = doc["targets"];
    if (!t.is_array() || t.empty()) throw ConfigError("field 'targets' must be a non-empty array");
    cfg.targets.clear();
    for (const auto& item : t) {
      mcell_target target;
      if (!item.is_string() || mcell_target_from_name(item.get<std::string>().c_str(), &target) != MCELL_OK)
        throw ConfigError("field 'targets': unknown target " + item.dump());
      cfg.targets.push_back(target);
    }
  }

  if (doc.contains("sweep")) {
    cfg.sweep = parse_axis(doc["sweep"], "sweep");
  } else {
    cfg.sweep.name = "theta_db";
    for (int i = 0; i <= 40; ++i) cfg.sweep.values.push_back(-20.0 + i);
  }
  if (doc.contains("series")) {
    cfg.series = parse_axis(doc["series"], "series");
    if (cfg.series->name == cfg.sweep.name) throw ConfigError("field 'series.axis' must differ from 'sweep.axis'");
  }
  if (doc.contains("power_control")) {
    const auto& pc = doc["power_control"];
    if (!pc.is_object()) throw ConfigError("field 'power_control' must be an object");
    for (const auto& [k, _] : pc.items())
      if (k != "targets") throw ConfigError("unknown field 'power_control." + k + "'");
    if (pc.contains("targets")) cfg.power_control_targets = numbers(pc["targets"], "power_control.targets");
  }

  if (mcell_params_validate(cfg.params.get()) != MCELL_OK) throw ConfigError(mcell_last_error());

  json effective = doc;
  effective["base_seed"] = cfg.base_seed;
  effective["n_trials"] = cfg.n_trials;
  effective.erase("workers");
  cfg.config_hash = fnv1a64_hex(effective.dump());
  return cfg;
}

Experiment make_experiment(const RunConfig& cfg, const mcell_params* params) {
  mcell_experiment* raw = nullptr;
  check(mcell_experiment_create(params, &raw));
  Experiment e(raw);
  check(mcell_experiment_set_trials(e.get(), cfg.n_trials));
  check(mcell_experiment_set_seed(e.get(), cfg.base_seed));
  check(mcell_experiment_set_window_km(e.get(), cfg.window_km_x, cfg.window_km_y));
  check(mcell_experiment_set_workers(e.get(), cfg.workers));
  check(mcell_experiment_set_backhaul_demand(e.get(), cfg.backhaul_demand));
  check(mcell_experiment_clear_targets(e.get()));
  for (auto t : cfg.targets) check(mcell_experiment_add_target(e.get(), t));
  return e;
}

}  // namespace cli
