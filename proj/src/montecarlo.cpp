#include "mobicell/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "mobicell/error.hpp"
#include "mobicell/geometry.hpp"
#include "mobicell/links.hpp"

namespace mobicell {

namespace {

constexpr Target kAllTargets[] = {Target::p_bh, Target::p_dl, Target::p_al,
                                  Target::t_bh, Target::t_dl, Target::t_al};

enum Stream : std::uint32_t { kSnapshot = 0, kDemand = 1, kBackhaul = 2, kDownlink = 3, kAccess = 4 };

enum LinkSlot { kBh = 0, kDl = 1, kAl = 2 };

LinkSlot slot_of(Target t) {
  switch (t) {
    case Target::p_bh:
    case Target::t_bh: return kBh;
    case Target::p_dl:
    case Target::t_dl: return kDl;
    default: return kAl;
  }
}

struct TrialRecord {
  double sir[3] = {std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN()};
  SharingMode mode = SharingMode::exclusive_al;
  int floored = 0;
  bool dl_fallback = false;
  bool failed = false;
  ErrorCode error_code = ErrorCode::numerical;
  std::string error;
};

Estimate summarize(long long n, double sum, double sum_sq, long long infinite) {
  Estimate e;
  e.n = n;
  e.infinite_sir_count = infinite;
  if (n == 0) {
    e.mean = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  e.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - n * e.mean * e.mean) / static_cast<double>(n - 1));
    e.ci95 = 1.96 * std::sqrt(var / static_cast<double>(n));
  }
  return e;
}

void run_trial(const ExperimentConfig& cfg, const Window& window, bool need[3], long long i,
               TrialRecord& rec) {
  const SystemParams& p = cfg.params;
  const auto idx = static_cast<std::uint64_t>(i);
  Rng snap_rng = trial_rng(cfg.base_seed, idx, kSnapshot);
  const NetworkSnapshot snap = build_snapshot(p, window, snap_rng);

  Rng demand_rng = trial_rng(cfg.base_seed, idx, kDemand);
  const bool bh_data = std::bernoulli_distribution(cfg.backhaul_demand)(demand_rng);
  const auto cues = cue_distances(snap);
  rec.mode = assign_subchannel(bh_data, cues).mode;

  if (need[kBh]) {
    Rng rng = trial_rng(cfg.base_seed, idx, kBackhaul);
    const auto s = sir_backhaul(snap, p, rng);
    rec.sir[kBh] = s.sir;
    rec.floored += s.floored_distances;
  }
  if (need[kDl]) {
    Rng rng = trial_rng(cfg.base_seed, idx, kDownlink);
    const auto sel = select_cue(cues);
    LinkSample s;
    if (sel.mode == SharingMode::share_with_cue) {
      s = sir_cellular_dl(snap, p, rng, *sel.cue_index, true);
    } else {
      s = sir_cellular_dl(snap, p, rng, 0, false);
      rec.dl_fallback = true;
    }
    rec.sir[kDl] = s.sir;
    rec.floored += s.floored_distances;
  }
  if (need[kAl]) {
    Rng rng = trial_rng(cfg.base_seed, idx, kAccess);
    const auto s = sir_access_link(snap, p, rng);
    rec.sir[kAl] = s.sir;
    rec.floored += s.floored_distances;
  }
}

}  // namespace

const char* to_string(Target t) noexcept {
  switch (t) {
    case Target::p_bh: return "p_bh";
    case Target::p_dl: return "p_dl";
    case Target::p_al: return "p_al";
    case Target::t_bh: return "t_bh";
    case Target::t_dl: return "t_dl";
    case Target::t_al: return "t_al";
  }
  return "unknown";
}

std::optional<Target> target_from_string(std::string_view name) {
  for (Target t : kAllTargets)
    if (name == to_string(t)) return t;
  return std::nullopt;
}

bool is_rate(Target t) noexcept {
  return t == Target::t_bh || t == Target::t_dl || t == Target::t_al;
}

void validate(const ExperimentConfig& c) {
  validate(c.params);
  if (c.n_trials < 1) throw Error(ErrorCode::parameter, "n_trials must be >= 1");
  if (!(c.window_km_x > 0.0) || !(c.window_km_y > 0.0))
    throw Error(ErrorCode::parameter, "window_km must be positive");
  if (c.targets.empty()) throw Error(ErrorCode::parameter, "targets must not be empty");
  if (c.workers < 0) throw Error(ErrorCode::parameter, "workers must be >= 0");
  if (!(c.backhaul_demand >= 0.0 && c.backhaul_demand <= 1.0))
    throw Error(ErrorCode::parameter, "backhaul_demand must lie in [0, 1]");
  const bool dl = c.targets.count(Target::p_dl) || c.targets.count(Target::t_dl);
  if (dl && c.params.n_cues < 1)
    throw Error(ErrorCode::parameter, "n_cues must be >= 1 for downlink targets");
}

const Estimate& ExperimentResult::estimate(Target t, std::size_t theta_index) const {
  if (is_rate(t)) {
    auto it = rates.find(t);
    if (it == rates.end()) throw Error(ErrorCode::parameter, std::string("target not run: ") + to_string(t));
    return it->second;
  }
  auto it = success.find(t);
  if (it == success.end() || theta_index >= it->second.size())
    throw Error(ErrorCode::parameter, std::string("target not run: ") + to_string(t));
  return it->second[theta_index];
}

Rng trial_rng(std::uint64_t base_seed, std::uint64_t trial, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), stream};
  return Rng(seq);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const double theta = config.params.theta;
  return run_experiment(config, std::span<const double>(&theta, 1));
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::span<const double> thetas) {
  validate(config);
  if (thetas.empty()) throw Error(ErrorCode::parameter, "run_experiment: no thresholds");
  for (double t : thetas)
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::parameter, "theta must be > 0");

  const Window window = Window::centered(config.window_km_x * 1000.0, config.window_km_y * 1000.0);
  bool need[3] = {false, false, false};
  for (Target t : config.targets) need[slot_of(t)] = true;

  const long long n = config.n_trials;
  std::vector<TrialRecord> records(static_cast<std::size_t>(n));
  int workers = config.workers == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : config.workers;
  workers = std::clamp<long long>(workers, 1, n);

  std::atomic<long long> next{0};
  auto work = [&]() {
    constexpr long long kChunk = 16;
    for (;;) {
      const long long start = next.fetch_add(kChunk);
      if (start >= n) return;
      const long long stop = std::min(n, start + kChunk);
      for (long long i = start; i < stop; ++i) {
        auto& rec = records[static_cast<std::size_t>(i)];
        try {
          run_trial(config, window, need, i, rec);
        } catch (const Error& e) {
          rec.failed = true;
          rec.error_code = e.code();
          rec.error = e.what();
        } catch (const std::exception& e) {
          rec.failed = true;
          rec.error = e.what();
        }
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ExperimentResult out;
  out.thetas.assign(thetas.begin(), thetas.end());
  for (long long i = 0; i < n; ++i) {
    const auto& rec = records[static_cast<std::size_t>(i)];
    if (rec.failed) {
      std::ostringstream os;
      os << "trial " << i << ": " << rec.error;
      throw Error(rec.error_code, os.str());
    }
  }

  // Sequential reduction in trial order keeps the sums independent of scheduling.
  for (Target t : config.targets) {
    const int slot = slot_of(t);
    if (is_rate(t)) {
      long long m = 0, inf = 0;
      double sum = 0.0, sq = 0.0;
      for (const auto& rec : records) {
        const double s = rec.sir[slot];
        if (std::isinf(s)) {
          ++inf;
          continue;
        }
        const double v = std::log1p(s);
        sum += v;
        sq += v * v;
        ++m;
      }
      out.rates[t] = summarize(m, sum, sq, inf);
    } else {
      auto& row = out.success[t];
      long long inf = 0;
      for (const auto& rec : records)
        if (std::isinf(rec.sir[slot])) ++inf;
      for (double theta : thetas) {
        long long hits = 0;
        for (const auto& rec : records)
          if (rec.sir[slot] > theta) ++hits;
        const double h = static_cast<double>(hits);
        row.push_back(summarize(n, h, h, inf));
      }
    }
  }
  for (const auto& rec : records) {
    switch (rec.mode) {
      case SharingMode::share_with_backhaul: ++out.modes.share_with_backhaul; break;
      case SharingMode::share_with_cue: ++out.modes.share_with_cue; break;
      case SharingMode::exclusive_al: ++out.modes.exclusive_al; break;
    }
    out.floored_distances += rec.floored;
    if (rec.dl_fallback) ++out.dl_fallbacks;
  }
  return out;
}

AnalyticResult evaluate_analytic(Target t, const SystemParams& params, const QuadratureSpec& quad) {
  switch (t) {
    case Target::p_bh: return p_bh(params, quad);
    case Target::p_dl: return p_dl(params);
    case Target::p_al: return p_al(params);
    case Target::t_bh: return ergodic_rate_bh(params, quad);
    case Target::t_dl: return ergodic_rate_dl(params, quad);
    case Target::t_al: return ergodic_rate_al(params, quad);
  }
  throw Error(ErrorCode::parameter, "unknown target");
}

SweepTable run_sweep(const ExperimentConfig& config, const std::string& axis,
                     std::span<const double> grid, bool simulate) {
  if (!has_param_field(axis)) throw Error(ErrorCode::parameter, "unknown sweep axis: " + axis);
  if (grid.empty()) throw Error(ErrorCode::parameter, "sweep grid is empty");
  validate(config);

  SweepTable table;
  table.axis = axis;
  table.targets.assign(config.targets.begin(), config.targets.end());
  table.rows.resize(grid.size());

  std::vector<ExperimentConfig> points(grid.size(), config);
  std::vector<std::string> point_error(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    table.rows[k].axis_value = grid[k];
    try {
      set_param(points[k].params, axis, grid[k]);
      validate(points[k].params);
    } catch (const Error& e) {
      point_error[k] = e.what();
    }
  }

  auto fill_error = [&](std::size_t k, const std::string& msg) {
    for (Target t : table.targets) table.rows[k].cells[t].error = msg;
  };

  // Analytic column.
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!point_error[k].empty()) {
      fill_error(k, point_error[k]);
      continue;
    }
    for (Target t : table.targets) {
      auto& cell = table.rows[k].cells[t];
      try {
        const auto a = evaluate_analytic(t, points[k].params);
        cell.analytic = a.value;
        cell.analytic_error = a.est_error;
        cell.terms_j = a.terms_j;
        cell.terms_q = a.terms_q;
        cell.warnings = a.warnings;
      } catch (const Error& e) {
        cell.analytic = std::numeric_limits<double>::quiet_NaN();
        cell.error = e.what();
      }
    }
  }
  if (!simulate) return table;

  const bool theta_axis = axis == "theta" || axis == "theta_db";
  if (theta_axis) {
    std::vector<double> thetas;
    std::vector<std::size_t> where;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!point_error[k].empty()) continue;
      thetas.push_back(points[k].params.theta);
      where.push_back(k);
    }
    if (thetas.empty()) return table;
    try {
      const auto res = run_experiment(config, thetas);
      for (std::size_t i = 0; i < where.size(); ++i)
        for (Target t : table.targets)
          table.rows[where[i]].cells[t].simulated = res.estimate(t, i);
    } catch (const Error& e) {
      for (std::size_t k : where)
        for (Target t : table.targets) {
          auto& cell = table.rows[k].cells[t];
          if (cell.error.empty()) cell.error = e.what();
        }
    }
    return table;
  }

  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!point_error[k].empty()) continue;
    try {
      const auto res = run_experiment(points[k]);
      for (Target t : table.targets) table.rows[k].cells[t].simulated = res.estimate(t);
    } catch (const Error& e) {
      for (Target t : table.targets) {
        auto& cell = table.rows[k].cells[t];
        if (cell.error.empty()) cell.error = e.what();
      }
    }
  }
  return table;
}

}  // namespace mobicell
