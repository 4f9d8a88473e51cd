#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mobicell/analytic.hpp"
#include "mobicell/channel.hpp"
#include "mobicell/drsa.hpp"
#include "mobicell/params.hpp"

namespace mobicell {

enum class Target { p_bh, p_dl, p_al, t_bh, t_dl, t_al };

const char* to_string(Target t) noexcept;
std::optional<Target> target_from_string(std::string_view name);
bool is_rate(Target t) noexcept;

struct ExperimentConfig {
  SystemParams params;
  long long n_trials = 10000;
  std::uint64_t base_seed = 0;
  double window_km_x = 40.0;
  double window_km_y = 40.0;
  std::set<Target> targets{Target::p_bh};
  int workers = 1;               // 0 picks the hardware concurrency
  double backhaul_demand = 0.5;  // P(BH has data) in the DRSA mode tally
};

void validate(const ExperimentConfig& config);

struct Estimate {
  double mean = 0.0;
  double ci95 = 0.0;  // 1.96 sqrt(s^2 / n)
  long long n = 0;
  long long infinite_sir_count = 0;
};

struct ModeTally {
  long long share_with_backhaul = 0;
  long long share_with_cue = 0;
  long long exclusive_al = 0;
};

struct ExperimentResult {
  std::vector<double> thetas;                          // linear thresholds
  std::map<Target, std::vector<Estimate>> success;     // p_* targets, one per theta
  std::map<Target, Estimate> rates;                    // t_* targets, nats/s/Hz
  ModeTally modes;
  long long floored_distances = 0;
  long long dl_fallbacks = 0;  // DL trials where DRSA kept the AL off every CUE

  /// Error(parameter) if the target was not requested.
  const Estimate& estimate(Target t, std::size_t theta_index = 0) const;
};

/// Independent generator for (base_seed, trial, stream); streams separate the
/// snapshot from each link so requested targets never shift each other's draws.
Rng trial_rng(std::uint64_t base_seed, std::uint64_t trial, std::uint32_t stream);

/// Threshold taken from config.params.theta.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Every trial's SIRs are tested against all `thetas` (common random numbers).
ExperimentResult run_experiment(const ExperimentConfig& config, std::span<const double> thetas);

/// Analytic counterpart of a target at `params`.
AnalyticResult evaluate_analytic(Target t, const SystemParams& params,
                                 const QuadratureSpec& quad = {});

struct SweepCell {
  Estimate simulated;
  double analytic = 0.0;
  double analytic_error = 0.0;
  int terms_j = 0;
  int terms_q = 0;
  std::string error;  // non-empty when this point failed
  std::vector<std::string> warnings;
};

struct SweepRow {
  double axis_value = 0.0;
  std::map<Target, SweepCell> cells;
};

struct SweepTable {
  std::string axis;
  std::vector<Target> targets;
  std::vector<SweepRow> rows;
};

/// One experiment plus analytic evaluation per grid point. Errors are recorded
/// per point and the sweep continues. A theta axis shares one set of trials.
/// `simulate` false skips Monte Carlo and leaves Estimate::n at 0.
SweepTable run_sweep(const ExperimentConfig& config, const std::string& axis,
                     std::span<const double> grid, bool simulate = true);

}  // namespace mobicell
