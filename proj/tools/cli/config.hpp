#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "handles.hpp"
#include "json.hpp"

namespace cli {

struct Axis {
  std::string name;
  std::vector<double> values;
};

struct RunConfig {
  std::string path;
  Params params;
  std::uint64_t base_seed = 0;
  long long n_trials = 10000;
  int workers = 1;
  double window_km_x = 40.0;
  double window_km_y = 40.0;
  double backhaul_demand = 0.5;
  std::vector<mcell_target> targets{MCELL_P_BH};
  Axis sweep;                   // default: theta_db over [-20, 20] dB, 41 points
  std::optional<Axis> series;   // one curve per value
  std::vector<double> power_control_targets{0.3, 0.5, 0.7, 0.9};
  std::string config_hash;      // FNV-1a over the effective config, workers excluded
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long long> trials;
  std::optional<int> workers;
};

/// Throws ConfigError naming the offending field.
RunConfig load_config(const std::string& path, const Overrides& overrides);

/// Experiment handle carrying every run setting from `cfg` on top of `params`.
Experiment make_experiment(const RunConfig& cfg, const mcell_params* params);

std::string fnv1a64_hex(const std::string& bytes);

}  // namespace cli
