#include "mobicell/mobicell.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "mobicell/analytic.hpp"
#include "mobicell/channel.hpp"
#include "mobicell/error.hpp"
#include "mobicell/montecarlo.hpp"
#include "mobicell/params.hpp"

struct mcell_params {
  mobicell::SystemParams value;
};

struct mcell_experiment {
  mobicell::ExperimentConfig config;
};

struct mcell_results {
  mobicell::ExperimentResult value;
};

struct mcell_sweep {
  mobicell::SweepTable value;
};

namespace {

using mobicell::ErrorCode;

thread_local std::string g_last_error;
thread_local std::vector<std::string> g_last_warnings;
thread_local std::vector<std::pair<std::string, double>> g_last_diagnostics;

mcell_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::parameter: return MCELL_ERR_PARAMETER;
    case ErrorCode::singularity: return MCELL_ERR_SINGULARITY;
    case ErrorCode::snapshot: return MCELL_ERR_SNAPSHOT;
    case ErrorCode::quadrature: return MCELL_ERR_QUADRATURE;
    case ErrorCode::unsupported_exponent: return MCELL_ERR_UNSUPPORTED_EXPONENT;
    case ErrorCode::divergent: return MCELL_ERR_DIVERGENT;
    case ErrorCode::infeasible: return MCELL_ERR_INFEASIBLE;
    case ErrorCode::numerical: return MCELL_ERR_NUMERICAL;
  }
  return MCELL_ERR_INTERNAL;
}

mcell_status fail(mcell_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
mcell_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MCELL_OK;
  } catch (const mobicell::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MCELL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MCELL_ERR_INTERNAL, e.what());
  }
}

bool valid_target(mcell_target t) { return t >= MCELL_P_BH && t <= MCELL_T_AL; }

mobicell::Target to_target(mcell_target t) { return static_cast<mobicell::Target>(t); }

mobicell::QuadratureSpec to_spec(const mcell_quadrature* q) {
  if (!q) return {};
  return {q->abs_tol, q->rel_tol, q->max_subdivisions};
}

void publish(const mobicell::AnalyticResult& r, mcell_analytic_result* out) {
  g_last_warnings = r.warnings;
  g_last_diagnostics = r.diagnostics;
  out->value = r.value;
  out->est_error = r.est_error;
  out->terms_j = r.terms_j;
  out->terms_q = r.terms_q;
  out->warning_count = r.warnings.size();
}

mcell_estimate to_c(const mobicell::Estimate& e) {
  return {e.mean, e.ci95, e.n, e.infinite_sir_count};
}

#define MCELL_REQUIRE(cond)                                              \
  do {                                                                   \
    if (!(cond)) return fail(MCELL_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* mcell_version(void) { return MOBICELL_VERSION_STRING; }

const char* mcell_status_string(mcell_status status) {
  switch (status) {
    case MCELL_OK: return "ok";
    case MCELL_ERR_PARAMETER: return "parameter";
    case MCELL_ERR_SINGULARITY: return "singularity";
    case MCELL_ERR_SNAPSHOT: return "snapshot";
    case MCELL_ERR_QUADRATURE: return "quadrature";
    case MCELL_ERR_UNSUPPORTED_EXPONENT: return "unsupported_exponent";
    case MCELL_ERR_DIVERGENT: return "divergent";
    case MCELL_ERR_INFEASIBLE: return "infeasible";
    case MCELL_ERR_NUMERICAL: return "numerical";
    case MCELL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MCELL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* mcell_last_error(void) { return g_last_error.c_str(); }

const char* mcell_last_warning(size_t index) {
  return index < g_last_warnings.size() ? g_last_warnings[index].c_str() : nullptr;
}

mcell_status mcell_last_diagnostic(const char* name, double* out) {
  MCELL_REQUIRE(name && out);
  for (const auto& [k, v] : g_last_diagnostics)
    if (k == name) {
      *out = v;
      return MCELL_OK;
    }
  return fail(MCELL_ERR_INVALID_ARGUMENT, std::string("no diagnostic named ") + name);
}

const char* mcell_target_name(mcell_target target) {
  return valid_target(target) ? mobicell::to_string(to_target(target)) : nullptr;
}

mcell_status mcell_target_from_name(const char* name, mcell_target* out) {
  MCELL_REQUIRE(name && out);
  const auto t = mobicell::target_from_string(name);
  if (!t) return fail(MCELL_ERR_PARAMETER, std::string("unknown target: ") + name);
  *out = static_cast<mcell_target>(*t);
  return MCELL_OK;
}

// Parameters -----------------------------------------------------------------

mcell_status mcell_params_create(mcell_params** out) {
  MCELL_REQUIRE(out);
  return guarded([&] { *out = new mcell_params{}; });
}

mcell_status mcell_params_clone(const mcell_params* params, mcell_params** out) {
  MCELL_REQUIRE(params && out);
  return guarded([&] { *out = new mcell_params{params->value}; });
}

void mcell_params_destroy(mcell_params* params) { delete params; }

mcell_status mcell_params_set(mcell_params* params, const char* name, double value) {
  MCELL_REQUIRE(params && name);
  return guarded([&] { mobicell::set_param(params->value, name, value); });
}

mcell_status mcell_params_get(const mcell_params* params, const char* name, double* out) {
  MCELL_REQUIRE(params && name && out);
  return guarded([&] { *out = mobicell::get_param(params->value, name); });
}

mcell_status mcell_params_validate(const mcell_params* params) {
  MCELL_REQUIRE(params);
  return guarded([&] { mobicell::validate(params->value); });
}

size_t mcell_param_count(void) { return mobicell::param_fields().size(); }

// Field names are views into static storage, so c_str-style access is safe.
const char* mcell_param_name(size_t index) {
  const auto f = mobicell::param_fields();
  return index < f.size() ? f[index].name.data() : nullptr;
}

const char* mcell_param_unit(size_t index) {
  const auto f = mobicell::param_fields();
  return index < f.size() ? f[index].unit.data() : nullptr;
}

int mcell_param_required(size_t index) {
  const auto f = mobicell::param_fields();
  return index < f.size() && f[index].required ? 1 : 0;
}

// Analytic -------------------------------------------------------------------

mcell_status mcell_analytic(const mcell_params* params, mcell_target target,
                            const mcell_quadrature* quad, mcell_analytic_result* out) {
  MCELL_REQUIRE(params && out && valid_target(target));
  return guarded([&] {
    publish(mobicell::evaluate_analytic(to_target(target), params->value, to_spec(quad)), out);
  });
}

mcell_status mcell_p_bh_given_y(const mcell_params* params, double y, const mcell_quadrature* quad,
                                mcell_analytic_result* out) {
  MCELL_REQUIRE(params && out);
  return guarded([&] {
    const auto& p = params->value;
    publish(p.kappa == 1 ? mobicell::p_bh_kappa1_given_y(p, y, to_spec(quad))
                         : mobicell::p_bh_kappa0_given_y(p, y, to_spec(quad)),
            out);
  });
}

mcell_status mcell_rho_kernel(double theta, double alpha, double* out) {
  MCELL_REQUIRE(out);
  return guarded([&] { *out = mobicell::rho_kernel(theta, alpha); });
}

mcell_status mcell_rho_closed_form(double theta, double* out) {
  MCELL_REQUIRE(out);
  return guarded([&] { *out = mobicell::rho_closed_form_alpha4(theta); });
}

mcell_status mcell_beta_kernel(double alpha, double* out) {
  MCELL_REQUIRE(out);
  return guarded([&] { *out = mobicell::beta_kernel(alpha); });
}

mcell_status mcell_omega(const mcell_params* params, double* out) {
  MCELL_REQUIRE(params && out);
  return guarded([&] { *out = mobicell::omega_kappa(params->value); });
}

mcell_status mcell_xi(const mcell_params* params, double* out) {
  MCELL_REQUIRE(params && out);
  return guarded([&] {
    const auto& p = params->value;
    *out = mobicell::xi_series(p.k_factor, p.alpha_i, p.j_max, p.q_max);
  });
}

mcell_status mcell_al_transmit_power(const mcell_params* params, double target, double* p_a_dbm,
                                     double* xi, double* omega) {
  MCELL_REQUIRE(params && p_a_dbm);
  return guarded([&] {
    const auto pc = mobicell::al_transmit_power(target, params->value);
    *p_a_dbm = mobicell::linear_to_dbm(pc.p_a);
    if (xi) *xi = pc.xi;
    if (omega) *omega = pc.omega;
  });
}

mcell_status mcell_p_al_power_law(const mcell_params* params, double* out) {
  MCELL_REQUIRE(params && out);
  return guarded([&] { *out = mobicell::p_al_power_law(params->value); });
}

mcell_status mcell_success_link_params(const mcell_params* params, double target, double* y1,
                                       double* y2) {
  MCELL_REQUIRE(params && y1 && y2);
  return guarded([&] {
    const auto s = mobicell::success_link_params(params->value, target);
    *y1 = s.y1;
    *y2 = s.y2;
  });
}

// Monte Carlo ------------------------------------------------------------------

mcell_status mcell_experiment_create(const mcell_params* params, mcell_experiment** out) {
  MCELL_REQUIRE(params && out);
  return guarded([&] {
    auto* e = new mcell_experiment{};
    e->config.params = params->value;
    *out = e;
  });
}

void mcell_experiment_destroy(mcell_experiment* exp) { delete exp; }

mcell_status mcell_experiment_set_trials(mcell_experiment* exp, long long n_trials) {
  MCELL_REQUIRE(exp);
  if (n_trials < 1) return fail(MCELL_ERR_PARAMETER, "n_trials must be >= 1");
  exp->config.n_trials = n_trials;
  return MCELL_OK;
}

mcell_status mcell_experiment_set_seed(mcell_experiment* exp, uint64_t seed) {
  MCELL_REQUIRE(exp);
  exp->config.base_seed = seed;
  return MCELL_OK;
}

mcell_status mcell_experiment_set_window_km(mcell_experiment* exp, double x_km, double y_km) {
  MCELL_REQUIRE(exp);
  if (!(x_km > 0.0) || !(y_km > 0.0)) return fail(MCELL_ERR_PARAMETER, "window_km must be positive");
  exp->config.window_km_x = x_km;
  exp->config.window_km_y = y_km;
  return MCELL_OK;
}

mcell_status mcell_experiment_set_workers(mcell_experiment* exp, int workers) {
  MCELL_REQUIRE(exp);
  if (workers < 0) return fail(MCELL_ERR_PARAMETER, "workers must be >= 0");
  exp->config.workers = workers;
  return MCELL_OK;
}

mcell_status mcell_experiment_set_backhaul_demand(mcell_experiment* exp, double p) {
  MCELL_REQUIRE(exp);
  if (!(p >= 0.0 && p <= 1.0)) return fail(MCELL_ERR_PARAMETER, "backhaul_demand must lie in [0, 1]");
  exp->config.backhaul_demand = p;
  return MCELL_OK;
}

mcell_status mcell_experiment_clear_targets(mcell_experiment* exp) {
  MCELL_REQUIRE(exp);
  exp->config.targets.clear();
  return MCELL_OK;
}

mcell_status mcell_experiment_add_target(mcell_experiment* exp, mcell_target target) {
  MCELL_REQUIRE(exp && valid_target(target));
  exp->config.targets.insert(to_target(target));
  return MCELL_OK;
}

mcell_status mcell_experiment_run(const mcell_experiment* exp, const double* thetas, size_t n_thetas,
                                  mcell_results** out) {
  MCELL_REQUIRE(exp && out);
  MCELL_REQUIRE(thetas || n_thetas == 0);
  return guarded([&] {
    auto* r = new mcell_results{};
    try {
      r->value = thetas ? mobicell::run_experiment(exp->config, std::span<const double>(thetas, n_thetas))
                        : mobicell::run_experiment(exp->config);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void mcell_results_destroy(mcell_results* results) { delete results; }

mcell_status mcell_results_estimate(const mcell_results* results, mcell_target target,
                                    size_t theta_index, mcell_estimate* out) {
  MCELL_REQUIRE(results && out && valid_target(target));
  if (!is_rate(to_target(target))) MCELL_REQUIRE(theta_index < results->value.thetas.size());
  return guarded([&] { *out = to_c(results->value.estimate(to_target(target), theta_index)); });
}

mcell_status mcell_results_modes(const mcell_results* results, long long* share_backhaul,
                                 long long* share_cue, long long* exclusive_al) {
  MCELL_REQUIRE(results);
  const auto& m = results->value.modes;
  if (share_backhaul) *share_backhaul = m.share_with_backhaul;
  if (share_cue) *share_cue = m.share_with_cue;
  if (exclusive_al) *exclusive_al = m.exclusive_al;
  return MCELL_OK;
}

mcell_status mcell_results_counters(const mcell_results* results, long long* floored,
                                    long long* dl_fallbacks) {
  MCELL_REQUIRE(results);
  if (floored) *floored = results->value.floored_distances;
  if (dl_fallbacks) *dl_fallbacks = results->value.dl_fallbacks;
  return MCELL_OK;
}

// Sweeps -----------------------------------------------------------------------

mcell_status mcell_sweep_run(const mcell_experiment* exp, const char* axis, const double* grid,
                             size_t n, int simulate, mcell_sweep** out) {
  MCELL_REQUIRE(exp && axis && grid && out && n > 0);
  return guarded([&] {
    auto* s = new mcell_sweep{};
    try {
      s->value = mobicell::run_sweep(exp->config, axis, std::span<const double>(grid, n), simulate != 0);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

void mcell_sweep_destroy(mcell_sweep* sweep) { delete sweep; }

size_t mcell_sweep_row_count(const mcell_sweep* sweep) { return sweep ? sweep->value.rows.size() : 0; }

namespace {

const mobicell::SweepCell* find_cell(const mcell_sweep* sweep, size_t row, mcell_target target) {
  if (!sweep || row >= sweep->value.rows.size() || !valid_target(target)) return nullptr;
  const auto& cells = sweep->value.rows[row].cells;
  auto it = cells.find(to_target(target));
  return it == cells.end() ? nullptr : &it->second;
}

}  // namespace

mcell_status mcell_sweep_get_cell(const mcell_sweep* sweep, size_t row, mcell_target target,
                                  mcell_sweep_cell* out) {
  MCELL_REQUIRE(out);
  const auto* c = find_cell(sweep, row, target);
  if (!c) return fail(MCELL_ERR_INVALID_ARGUMENT, "no such sweep cell");
  out->axis_value = sweep->value.rows[row].axis_value;
  out->analytic = c->analytic;
  out->analytic_error = c->analytic_error;
  out->terms_j = c->terms_j;
  out->terms_q = c->terms_q;
  out->simulated = to_c(c->simulated);
  out->failed = c->error.empty() ? 0 : 1;
  out->warning_count = c->warnings.size();
  return MCELL_OK;
}

const char* mcell_sweep_cell_error(const mcell_sweep* sweep, size_t row, mcell_target target) {
  const auto* c = find_cell(sweep, row, target);
  return c ? c->error.c_str() : nullptr;
}

const char* mcell_sweep_cell_warning(const mcell_sweep* sweep, size_t row, mcell_target target,
                                     size_t index) {
  const auto* c = find_cell(sweep, row, target);
  return c && index < c->warnings.size() ? c->warnings[index].c_str() : nullptr;
}

}  // extern "C"
