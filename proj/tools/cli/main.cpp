// mobicell: batch front end over the libmobicell C API.
//
//   mobicell <analytic|simulate|sweep|power-control> --config <path> --out <dir>
//            [--seed N] [--trials N] [--workers N] [--svg]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "handles.hpp"
#include "json.hpp"
#include "output.hpp"

namespace fs = std::filesystem;

namespace cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunContext {
  std::string command;
  RunConfig cfg;
  fs::path out_dir;
  bool svg = false;
  std::vector<std::string> emitted;
  long long point_failures = 0;
  nlohmann::json summary = nlohmann::json::object();

  void write_csv(const CsvTable& t, const std::string& name) {
    t.write(out_dir / name, command, cfg.base_seed, cfg.config_hash);
    emitted.push_back(name);
  }
  void write_plot(const Plot& p, const std::string& name) {
    write_svg(out_dir / name, p);
    emitted.push_back(name);
  }
};

std::string warnings_text(const mcell_sweep* s, std::size_t row, mcell_target t, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (const char* w = mcell_sweep_cell_warning(s, row, t, i)) out += (i ? " | " : "") + std::string(w);
  }
  return out;
}

bool is_probability(mcell_target t) { return t == MCELL_P_BH || t == MCELL_P_DL || t == MCELL_P_AL; }

std::string y_label(const std::vector<mcell_target>& targets) {
  bool p = false, r = false;
  for (auto t : targets) (is_probability(t) ? p : r) = true;
  if (p && r) return "success probability / rate (nats/s/Hz)";
  return p ? "success probability" : "ergodic rate (nats/s/Hz)";
}

// One sweep per series value (a single pass without a series block).
struct SeriesPass {
  std::string label;
  double value = std::nan("");
  Sweep sweep;
};

std::vector<SeriesPass> run_passes(RunContext& ctx, bool simulate) {
  const auto& cfg = ctx.cfg;
  std::vector<SeriesPass> passes;
  std::vector<double> values = cfg.series ? cfg.series->values : std::vector<double>{std::nan("")};
  for (double v : values) {
    Params p = clone(cfg.params.get());
    SeriesPass pass;
    pass.value = v;
    if (cfg.series) {
      check(mcell_params_set(p.get(), cfg.series->name.c_str(), v));
      pass.label = cfg.series->name + "=" + fmt(v);
    }
    Experiment e = make_experiment(cfg, p.get());
    mcell_sweep* raw = nullptr;
    check(mcell_sweep_run(e.get(), cfg.sweep.name.c_str(), cfg.sweep.values.data(), cfg.sweep.values.size(),
                          simulate ? 1 : 0, &raw));
    pass.sweep = Sweep(raw);
    passes.push_back(std::move(pass));
  }
  return passes;
}

void emit_sweep_outputs(RunContext& ctx, const std::vector<SeriesPass>& passes, bool simulate) {
  const auto& cfg = ctx.cfg;
  std::vector<std::string> header;
  if (cfg.series) header.push_back(cfg.series->name);
  header.push_back(cfg.sweep.name);
  header.push_back("target");
  header.push_back("analytic");
  header.push_back("analytic_error");
  if (simulate) {
    for (const char* h : {"simulated", "ci95", "n", "infinite_sir", "abs_diff"}) header.push_back(h);
  } else {
    header.push_back("terms_j");
    header.push_back("terms_q");
  }
  header.push_back("status");
  header.push_back("message");
  CsvTable table(header);
  Plot plot;
  plot.title = std::string(simulate ? "analytic vs simulation" : "analytic") + " over " + cfg.sweep.name;
  plot.x_label = cfg.sweep.name;
  plot.y_label = y_label(cfg.targets);

  for (const auto& pass : passes) {
    for (auto t : cfg.targets) {
      PlotSeries a, m;
      const std::string name = mcell_target_name(t) + (pass.label.empty() ? "" : " " + pass.label);
      a.label = name + " analytic";
      m.label = name + " simulated";
      m.line = false;
      const std::size_t rows = mcell_sweep_row_count(pass.sweep.get());
      for (std::size_t r = 0; r < rows; ++r) {
        mcell_sweep_cell c{};
        check(mcell_sweep_get_cell(pass.sweep.get(), r, t, &c));
        const std::string err = mcell_sweep_cell_error(pass.sweep.get(), r, t);
        std::vector<std::string> row;
        if (cfg.series) row.push_back(fmt(pass.value));
        row.push_back(fmt(c.axis_value));
        row.push_back(mcell_target_name(t));
        row.push_back(fmt(c.analytic));
        row.push_back(fmt(c.analytic_error));
        if (simulate) {
          const auto& s = c.simulated;
          row.push_back(fmt(s.mean));
          row.push_back(fmt(s.ci95));
          row.push_back(std::to_string(s.n));
          row.push_back(std::to_string(s.infinite_sir_count));
          row.push_back(fmt(std::abs(c.analytic - s.mean)));
        } else {
          row.push_back(std::to_string(c.terms_j));
          row.push_back(std::to_string(c.terms_q));
        }
        std::string status = "ok", message = warnings_text(pass.sweep.get(), r, t, c.warning_count);
        if (c.failed) {
          status = "error";
          message = err;
          ++ctx.point_failures;
        } else if (c.warning_count > 0) {
          status = "warning";
        }
        row.push_back(status);
        row.push_back(message);
        table.add_row(std::move(row));

        a.x.push_back(c.axis_value);
        a.y.push_back(c.analytic);
        if (simulate) {
          m.x.push_back(c.axis_value);
          m.y.push_back(c.failed ? std::nan("") : c.simulated.mean);
          m.ci.push_back(c.simulated.ci95);
        }
      }
      plot.series.push_back(std::move(a));
      if (simulate) plot.series.push_back(std::move(m));
    }
  }
  ctx.write_csv(table, ctx.command + ".csv");
  if (ctx.svg) ctx.write_plot(plot, ctx.command + ".svg");
}

void cmd_analytic(RunContext& ctx) {
  const auto passes = run_passes(ctx, false);
  emit_sweep_outputs(ctx, passes, false);
}

void cmd_sweep(RunContext& ctx) {
  const auto passes = run_passes(ctx, true);
  emit_sweep_outputs(ctx, passes, true);
}

void cmd_simulate(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  Experiment e = make_experiment(cfg, cfg.params.get());
  mcell_results* raw = nullptr;
  check(mcell_experiment_run(e.get(), nullptr, 0, &raw));
  Results res(raw);

  double theta_db = 0.0;
  check(mcell_params_get(cfg.params.get(), "theta_db", &theta_db));
  CsvTable table({"target", "theta_db", "analytic", "analytic_error", "simulated", "ci95", "n", "infinite_sir",
                  "abs_diff", "status", "message"});
  Plot plot;
  plot.title = "analytic vs simulation at theta = " + fmt(theta_db) + " dB";
  plot.x_label = "target index";
  plot.y_label = y_label(cfg.targets);
  PlotSeries a{"analytic", {}, {}, {}, false}, m{"simulated", {}, {}, {}, false};

  for (std::size_t k = 0; k < cfg.targets.size(); ++k) {
    const auto t = cfg.targets[k];
    mcell_estimate est{};
    check(mcell_results_estimate(res.get(), t, 0, &est));
    mcell_analytic_result ar{};
    const mcell_status s = mcell_analytic(cfg.params.get(), t, nullptr, &ar);
    std::string status = "ok", message;
    double value = std::nan(""), err = std::nan("");
    if (s == MCELL_OK) {
      value = ar.value;
      err = ar.est_error;
      for (std::size_t i = 0; i < ar.warning_count; ++i) message += (i ? " | " : "") + std::string(mcell_last_warning(i));
      if (ar.warning_count) status = "warning";
    } else {
      status = "error";
      message = status_message(s);
      ++ctx.point_failures;
    }
    table.add_row({mcell_target_name(t), fmt(theta_db), fmt(value), fmt(err), fmt(est.mean), fmt(est.ci95),
                   std::to_string(est.n), std::to_string(est.infinite_sir_count), fmt(std::abs(value - est.mean)),
                   status, message});
    a.x.push_back(static_cast<double>(k));
    a.y.push_back(value);
    m.x.push_back(static_cast<double>(k));
    m.y.push_back(est.mean);
    m.ci.push_back(est.ci95);
  }
  long long bh = 0, cue = 0, excl = 0, floored = 0, fallback = 0;
  check(mcell_results_modes(res.get(), &bh, &cue, &excl));
  check(mcell_results_counters(res.get(), &floored, &fallback));
  ctx.summary["drsa_modes"] = {{"share_with_backhaul", bh}, {"share_with_cue", cue}, {"exclusive_al", excl}};
  ctx.summary["floored_distances"] = floored;
  ctx.summary["dl_fallbacks"] = fallback;

  ctx.write_csv(table, "simulate.csv");
  plot.series = {a, m};
  if (ctx.svg) ctx.write_plot(plot, "simulate.svg");
}

void cmd_power_control(RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  double kappa = 0.0;
  check(mcell_params_get(cfg.params.get(), "kappa", &kappa));
  CsvTable table({"p_al_target", "feasible", "p_a_dbm", "p_a_mw", "xi", "omega", "y1", "y2", "p_bh",
                  "p_al_roundtrip", "status", "message"});
  PlotSeries pb{"p_bh", {}, {}, {}, true}, pa{"p_al round trip", {}, {}, {}, false};
  long long infeasible = 0;

  for (double target : cfg.power_control_targets) {
    double p_a_dbm = 0.0, xi = 0.0, omega = 0.0;
    const mcell_status s = mcell_al_transmit_power(cfg.params.get(), target, &p_a_dbm, &xi, &omega);
    if (s == MCELL_ERR_INFEASIBLE || s == MCELL_ERR_PARAMETER) {
      const std::string msg = status_message(s);
      mcell_xi(cfg.params.get(), &xi);
      mcell_omega(cfg.params.get(), &omega);
      table.add_row({fmt(target), "0", "nan", "nan", fmt(xi), fmt(omega), "nan", "nan", "nan", "nan", "infeasible",
                     msg});
      ++infeasible;
      continue;
    }
    check(s);
    double y1 = 0.0, y2 = 0.0;
    check(mcell_success_link_params(cfg.params.get(), target, &y1, &y2));
    Params p = clone(cfg.params.get());
    check(mcell_params_set(p.get(), "p_a", p_a_dbm));
    mcell_analytic_result bh{};
    check(mcell_p_bh_given_y(cfg.params.get(), kappa == 1.0 ? y1 : y2, nullptr, &bh));
    double round_trip = 0.0;
    check(mcell_p_al_power_law(p.get(), &round_trip));
    table.add_row({fmt(target), "1", fmt(p_a_dbm), fmt(std::pow(10.0, p_a_dbm / 10.0)), fmt(xi), fmt(omega),
                   fmt(y1), fmt(y2), fmt(bh.value), fmt(round_trip), bh.warning_count ? "warning" : "ok", ""});
    pb.x.push_back(target);
    pb.y.push_back(bh.value);
    pa.x.push_back(target);
    pa.y.push_back(round_trip);
  }
  ctx.summary["infeasible_targets"] = infeasible;
  ctx.write_csv(table, "power_control.csv");
  if (ctx.svg) {
    Plot plot{"BH success under AL power control", "p_al target", "probability", {pb, pa}};
    ctx.write_plot(plot, "power_control.svg");
  }
}

void write_manifest(const RunContext& ctx, double wall) {
  nlohmann::ordered_json m;
  m["command"] = ctx.command;
  m["config_path"] = ctx.cfg.path;
  m["output_dir"] = ctx.out_dir.string();
  m["emitted_files"] = ctx.emitted;
  m["wall_time"] = wall;
  m["tool_version"] = mcell_version();
  m["base_seed"] = ctx.cfg.base_seed;
  m["config_hash"] = "fnv1a64:" + ctx.cfg.config_hash;
  m["n_trials"] = ctx.cfg.n_trials;
  m["point_failures"] = ctx.point_failures;
  m["summary"] = ctx.summary;
  std::ofstream out(ctx.out_dir / "manifest.json", std::ios::binary);
  if (!out) throw RunError("cannot write manifest.json");
  out << m.dump(2) << "\n";
}

}  // namespace
}  // namespace cli

int main(int argc, char** argv) {
  using namespace cli;
  CLI::App app{"mobicell: mobile-cell resource-sharing analysis and simulation"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<long long> trials;
  std::optional<int> workers;
  bool svg = false;
  for (const char* name : {"analytic", "simulate", "sweep", "power-control"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "override base_seed");
    sub->add_option("--trials", trials, "override n_trials");
    sub->add_option("--workers", workers, "worker threads (0 = all cores)");
    sub->add_flag("--svg", svg, "also write an SVG plot");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  RunContext ctx;
  ctx.command = app.get_subcommands().front()->get_name();
  ctx.out_dir = out_dir;
  ctx.svg = svg;
  const auto start = std::chrono::steady_clock::now();
  try {
    ctx.cfg = load_config(config_path, Overrides{seed, trials, workers});
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());

    if (ctx.command == "analytic") cmd_analytic(ctx);
    else if (ctx.command == "simulate") cmd_simulate(ctx);
    else if (ctx.command == "sweep") cmd_sweep(ctx);
    else cmd_power_control(ctx);

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(ctx, wall);
  } catch (const ConfigError& e) {
    std::cerr << "mobicell: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RunError& e) {
    std::cerr << "mobicell: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "mobicell: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  if (ctx.point_failures > 0) {
    std::cerr << "mobicell: " << ctx.point_failures << " grid point(s) failed; see the status column\n";
    return kExitNumerical;
  }
  return kExitOk;
}
