// Acceptance run: one PASS/FAIL line per criterion. `acceptance N` runs only
// criterion N; no argument runs all ten.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mobicell/analytic.hpp"
#include "mobicell/channel.hpp"
#include "mobicell/error.hpp"
#include "mobicell/geometry.hpp"
#include "mobicell/montecarlo.hpp"
#include "support.hpp"

using namespace mobicell;
using testing_support::db_grid;
using testing_support::ks_statistic;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

SystemParams baseline(int kappa, double p_s_dbm = 3.0) {
  SystemParams p;
  p.lambda_m = 2e-6;
  p.lambda_s = 2e-5;
  p.epsilon = 0.1;
  p.gamma = 1.0;
  p.kappa = kappa;
  p.p_s = dbm_to_linear(p_s_dbm);
  return p;
}

std::vector<double> theta_grid() {
  std::vector<double> out;
  for (double db : db_grid(-20, 20, 41)) out.push_back(db_to_linear(db));
  return out;
}

ExperimentConfig experiment(const SystemParams& p, Target t, std::uint64_t seed, long long trials = 10000) {
  ExperimentConfig c;
  c.params = p;
  c.n_trials = trials;
  c.base_seed = seed;
  c.targets = {t};
  c.workers = 0;
  return c;
}

double analytic_at(Target t, SystemParams p, double theta) {
  p.theta = theta;
  return evaluate_analytic(t, p).value;
}

// Largest |analytic - simulated| over the theta grid, one shared trial set.
double max_gap(const SystemParams& p, Target t, std::uint64_t seed) {
  const auto thetas = theta_grid();
  const auto r = run_experiment(experiment(p, t, seed), thetas);
  double gap = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i)
    gap = std::max(gap, std::abs(r.estimate(t, i).mean - analytic_at(t, p, thetas[i])));
  return gap;
}

Verdict c1() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const double g0 = max_gap(baseline(0), Target::p_bh, 101);
  v.require(g0 <= 0.05, "kappa=0 max gap " + num(g0));
  for (double ps : {3.0, 23.0}) {
    const double g = max_gap(baseline(1, ps), Target::p_bh, 102 + static_cast<int>(ps));
    v.require(g <= 0.05, "kappa=1 P_S=" + num(ps) + " dBm max gap " + num(g));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(secs <= 600.0, "runtime " + num(secs) + " s");
  return v;
}

Verdict c2() {
  Verdict v;
  double gap = 0.0;
  bool below = true;
  for (double theta : theta_grid()) {
    const double k0 = analytic_at(Target::p_bh, baseline(0), theta);
    gap = std::max(gap, std::abs(analytic_at(Target::p_bh, baseline(1, 3.0), theta) - k0));
    below = below && analytic_at(Target::p_bh, baseline(1, 23.0), theta) <= k0;
  }
  v.require(gap <= 0.05, "max |kappa1 - kappa0| " + num(gap));
  v.require(below, "P_S=23 dBm curve below kappa=0 everywhere");
  return v;
}

Verdict c3() {
  Verdict v;
  SystemParams p;
  p.lambda_m = 4e-6;
  p.lambda_s = 4e-5;
  p.r_u = 50.0;
  p.kappa = 1;
  double prev = -1.0, gap = 0.0;
  bool increasing = true;
  for (double r : {60.0, 100.0, 200.0, 300.0, 400.0, 500.0}) {
    p.r_mu = r;
    const double a = p_dl(p).value;
    increasing = increasing && a > prev;
    prev = a;
    const double s = run_experiment(experiment(p, Target::p_dl, 300 + static_cast<int>(r))).estimate(Target::p_dl).mean;
    gap = std::max(gap, std::abs(a - s));
  }
  v.require(gap <= 0.05, "max gap over r_mu " + num(gap));
  v.require(increasing, "analytic strictly increasing in r_mu");
  return v;
}

Verdict c4() {
  Verdict v;
  for (double eps : {0.1, 0.8}) {
    SystemParams p;
    p.epsilon = eps;
    p.mue_placement = MuePlacement::at_max;
    const double g = max_gap(p, Target::p_al, 400 + static_cast<int>(eps * 10));
    v.require(g <= 0.05, "eps=" + num(eps) + " max gap " + num(g));
  }
  // Isolation clause on the simulated network, MUE anywhere in the vehicle.
  SystemParams p;
  std::vector<double> low;
  for (double db : db_grid(-20, 0, 21)) low.push_back(db_to_linear(db));
  const auto r = run_experiment(experiment(p, Target::p_al, 410), low);
  double worst = 1.0;
  for (std::size_t i = 0; i < low.size(); ++i) worst = std::min(worst, r.estimate(Target::p_al, i).mean);
  v.require(worst >= 0.99, "min simulated p_al for theta <= 0 dB " + num(worst) + " (analytic at r_av max: " +
                               num(analytic_at(Target::p_al, p, 1.0)) + ")");
  return v;
}

Verdict c5() {
  Verdict v;
  bool ordered = true;
  for (double theta : theta_grid()) {
    SystemParams a = baseline(0), b = baseline(0), c = baseline(0);
    a.gamma = 0.0;
    b.gamma = 0.5;
    const double pa = analytic_at(Target::p_bh, a, theta), pb = analytic_at(Target::p_bh, b, theta),
                 pc = analytic_at(Target::p_bh, c, theta);
    ordered = ordered && pa >= pb && pb >= pc;
  }
  v.require(ordered, "p_bh(gamma=0) >= p_bh(0.5) >= p_bh(1)");

  struct Case {
    double gamma, lambda_m;
  };
  const Case cases[] = {{0.0, 2e-6}, {1.0, 2e-6}, {0.1, 2e-6}, {1.0, 4e-6}};
  double rate[4];
  for (int i = 0; i < 4; ++i) {
    SystemParams p = baseline(0);
    p.gamma = cases[i].gamma;
    p.lambda_m = cases[i].lambda_m;
    p.lambda_s = 10 * p.lambda_m;
    rate[i] = ergodic_rate_bh(p).value;
    const double sim = run_experiment(experiment(p, Target::t_bh, 500 + i)).estimate(Target::t_bh).mean;
    v.require(std::abs(sim - rate[i]) <= 0.05 * rate[i],
              "T_BH(gamma=" + num(p.gamma) + ", lambda_M=" + num(p.lambda_m) + ") analytic " + num(rate[i]) +
                  " simulated " + num(sim));
  }
  v.require(rate[0] / rate[1] >= 1.5, "T_BH(0)/T_BH(1) = " + num(rate[0] / rate[1]));
  v.require(rate[2] > rate[3], "T_BH(0.1, 2e-6) > T_BH(1, 4e-6)");
  return v;
}

Verdict c6() {
  Verdict v;
  const SystemParams p;
  const double xi = xi_series(p.k_factor, p.alpha_i, p.j_max, p.q_max);
  double prev_pa = -INFINITY, prev_bh = INFINITY;
  bool round_trip = true, pa_up = true, bh_down = true;
  for (double t : {0.3, 0.5, 0.7, 0.9}) {
    if (!(t < xi)) continue;
    SystemParams q = p;
    q.p_a = al_transmit_power(t, p).p_a;
    round_trip = round_trip && std::abs(p_al_power_law(q) - t) <= 1e-3;
    const double bh = p_bh_kappa0_given_y(p, success_link_params(p, t).y2).value;
    pa_up = pa_up && q.p_a.linear_mw > prev_pa;
    bh_down = bh_down && bh < prev_bh;
    prev_pa = q.p_a.linear_mw;
    prev_bh = bh;
  }
  v.require(round_trip, "round trip within 1e-3 (Xi = " + num(xi) + ")");
  v.require(pa_up, "P_a increasing in target");
  v.require(bh_down, "p_bh decreasing in target");
  return v;
}

Verdict c7() {
  Verdict v;
  const QuadratureSpec tight{1e-13, 1e-12, 4000};
  double worst = 0.0;
  for (double t : {0.01, 0.1, 1.0, 10.0})
    worst = std::max(worst, std::abs(rho_kernel(t, 4.0, tight) - rho_closed_form_alpha4(t)));
  v.require(worst <= 1e-9, "rho max deviation " + num(worst));
  v.require(std::abs(beta_kernel(4.0) - std::numbers::pi / 2) <= 1e-12, "beta(4) = pi/2");
  double y0 = 0.0;
  for (double theta : theta_grid()) {
    SystemParams p = baseline(0);
    p.theta = theta;
    y0 = std::max(y0, std::abs(p_bh_kappa0_given_y(p, 0.0).value - 1.0 / (1.0 + rho_closed_form_alpha4(theta))));
  }
  v.require(y0 <= 1e-6, "Y2 = 0 max deviation " + num(y0));
  return v;
}

Verdict c8() {
  Verdict v;
  SystemParams a, b;
  b.j_max = b.q_max = 90;
  const double d = std::abs(p_al(a).value - p_al(b).value);
  v.require(d < 1e-6, "|p_al(70) - p_al(90)| = " + num(d));
  return v;
}

Verdict c9() {
  Verdict v;
  Rng rng(909);
  const double lambda = 2e-6;
  const Window w = Window::centered(10e3, 10e3);
  std::vector<double> d;
  for (int i = 0; i < 100000; ++i) {
    const auto f = sample_ppp(lambda, w, rng);
    d.push_back(distance(f.points[nearest_index(f.points, w.center())], w.center()));
  }
  const double ks = ks_statistic(d, [&](double x) { return nearest_distance_cdf(x, lambda); });
  v.require(ks < 0.01, "nearest-distance KS " + num(ks));
  for (double k : {0.0, 1.5848931924611136, 10.0}) {
    double sum = 0.0;
    for (int i = 0; i < 1000000; ++i) sum += sample_rician_power(k, rng).value;
    const double rel = std::abs(sum / 1e6 - (k + 1)) / (k + 1);
    v.require(rel <= 0.01, "Rician K=" + num(k) + " mean rel err " + num(rel));
  }
  std::vector<double> e(100000);
  for (auto& x : e) x = sample_rician_power(0.0, rng).value;
  const double ks0 = ks_statistic(e, [](double x) { return 1.0 - std::exp(-x); });
  v.require(ks0 < 0.01, "K=0 vs Exp(1) KS " + num(ks0));
  return v;
}

int shell(const std::string& cmd) {
  const int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict c10() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path scratch = fs::path(MOBICELL_SCRATCH_DIR) / "acceptance";
  fs::remove_all(scratch);
  const std::string cli = MOBICELL_CLI_PATH;
  const std::string src = MOBICELL_SOURCE_DIR;
  struct Job {
    std::string command, config, csv;
  };
  const Job jobs[] = {{"sweep", "bh_senb_active.json", "sweep.csv"},
                      {"sweep", "al_penetration.json", "sweep.csv"},
                      {"simulate", "default_rates.json", "simulate.csv"}};
  for (const auto& j : jobs) {
    std::string run[2];
    int idx = 0;
    for (int workers : {1, 4}) {
      const fs::path out = scratch / (j.config + "_w" + std::to_string(workers));
      const int code = shell(cli + " " + j.command + " --config " + src + "/configs/" + j.config +
                             " --trials 2000 --workers " + std::to_string(workers) + " --svg --out " + out.string() +
                             " >/dev/null 2>&1");
      v.require(code == 0, j.config + " exit " + std::to_string(code) + " with " + std::to_string(workers) + " workers");
      run[idx++] = slurp(out / j.csv);
    }
    v.require(!run[0].empty() && run[0] == run[1], j.config + " CSV identical across 1 and 4 workers");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (only && i != only) continue;
    Verdict v;
    try {
      v = criteria[i - 1]();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::printf("criterion %d: %s  %s\n", i, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
