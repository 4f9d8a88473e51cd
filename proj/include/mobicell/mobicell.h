/* mobicell C API.
 *
 * Opaque handles own their state; every *_create has a matching *_destroy.
 * Functions return MCELL_OK or an error status; the message for the failing
 * call on the current thread is available from mcell_last_error().
 * Powers cross this boundary in dBm, thresholds as `theta` (linear) or
 * `theta_db`, densities per m^2, distances in meters. */
#ifndef MOBICELL_MOBICELL_H
#define MOBICELL_MOBICELL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MOBICELL_BUILDING_LIBRARY)
#define MCELL_API __declspec(dllexport)
#else
#define MCELL_API __declspec(dllimport)
#endif
#else
#define MCELL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcell_status {
  MCELL_OK = 0,
  MCELL_ERR_PARAMETER = 1,
  MCELL_ERR_SINGULARITY = 2,
  MCELL_ERR_SNAPSHOT = 3,
  MCELL_ERR_QUADRATURE = 4,
  MCELL_ERR_UNSUPPORTED_EXPONENT = 5,
  MCELL_ERR_DIVERGENT = 6,
  MCELL_ERR_INFEASIBLE = 7,
  MCELL_ERR_NUMERICAL = 8,
  MCELL_ERR_INVALID_ARGUMENT = 9, /* null handle, bad index */
  MCELL_ERR_INTERNAL = 10
} mcell_status;

typedef enum mcell_target {
  MCELL_P_BH = 0,
  MCELL_P_DL = 1,
  MCELL_P_AL = 2,
  MCELL_T_BH = 3,
  MCELL_T_DL = 4,
  MCELL_T_AL = 5
} mcell_target;

typedef struct mcell_params mcell_params;
typedef struct mcell_experiment mcell_experiment;
typedef struct mcell_results mcell_results;
typedef struct mcell_sweep mcell_sweep;

typedef struct mcell_quadrature {
  double abs_tol;
  double rel_tol;
  int max_subdivisions;
} mcell_quadrature;

typedef struct mcell_analytic_result {
  double value;
  double est_error;
  int terms_j;
  int terms_q;
  size_t warning_count; /* text via mcell_last_warning() */
} mcell_analytic_result;

typedef struct mcell_estimate {
  double mean;
  double ci95;
  long long n;
  long long infinite_sir_count;
} mcell_estimate;

typedef struct mcell_sweep_cell {
  double axis_value;
  double analytic;
  double analytic_error;
  int terms_j;
  int terms_q;
  mcell_estimate simulated;
  int failed;
  size_t warning_count;
} mcell_sweep_cell;

/* Library ---------------------------------------------------------------- */

MCELL_API const char* mcell_version(void);
MCELL_API const char* mcell_status_string(mcell_status status);
MCELL_API const char* mcell_last_error(void);
/* Warnings of the last analytic call on this thread; NULL past the end. */
MCELL_API const char* mcell_last_warning(size_t index);
/* Named kernel value of the last analytic call on this thread. */
MCELL_API mcell_status mcell_last_diagnostic(const char* name, double* out);

MCELL_API const char* mcell_target_name(mcell_target target);
MCELL_API mcell_status mcell_target_from_name(const char* name, mcell_target* out);

/* Parameters ------------------------------------------------------------- */

MCELL_API mcell_status mcell_params_create(mcell_params** out);
MCELL_API mcell_status mcell_params_clone(const mcell_params* params, mcell_params** out);
MCELL_API void mcell_params_destroy(mcell_params* params);
MCELL_API mcell_status mcell_params_set(mcell_params* params, const char* name, double value);
MCELL_API mcell_status mcell_params_get(const mcell_params* params, const char* name, double* out);
MCELL_API mcell_status mcell_params_validate(const mcell_params* params);

MCELL_API size_t mcell_param_count(void);
MCELL_API const char* mcell_param_name(size_t index);
MCELL_API const char* mcell_param_unit(size_t index);
MCELL_API int mcell_param_required(size_t index);

/* Analytic --------------------------------------------------------------- */

/* `quad` may be NULL for the defaults. */
MCELL_API mcell_status mcell_analytic(const mcell_params* params, mcell_target target,
                                      const mcell_quadrature* quad, mcell_analytic_result* out);
/* BH success probability with the success-link parameter (Y1 for kappa = 1,
 * Y2 for kappa = 0) supplied directly. */
MCELL_API mcell_status mcell_p_bh_given_y(const mcell_params* params, double y,
                                          const mcell_quadrature* quad, mcell_analytic_result* out);

MCELL_API mcell_status mcell_rho_kernel(double theta, double alpha, double* out);
MCELL_API mcell_status mcell_rho_closed_form(double theta, double* out);
MCELL_API mcell_status mcell_beta_kernel(double alpha, double* out);
MCELL_API mcell_status mcell_omega(const mcell_params* params, double* out);
MCELL_API mcell_status mcell_xi(const mcell_params* params, double* out);

/* Power control: returns P_a in dBm. MCELL_ERR_INFEASIBLE when target >= Xi. */
MCELL_API mcell_status mcell_al_transmit_power(const mcell_params* params, double target,
                                               double* p_a_dbm, double* xi, double* omega);
MCELL_API mcell_status mcell_p_al_power_law(const mcell_params* params, double* out);
MCELL_API mcell_status mcell_success_link_params(const mcell_params* params, double target,
                                                 double* y1, double* y2);

/* Monte Carlo ------------------------------------------------------------ */

MCELL_API mcell_status mcell_experiment_create(const mcell_params* params, mcell_experiment** out);
MCELL_API void mcell_experiment_destroy(mcell_experiment* exp);
MCELL_API mcell_status mcell_experiment_set_trials(mcell_experiment* exp, long long n_trials);
MCELL_API mcell_status mcell_experiment_set_seed(mcell_experiment* exp, uint64_t seed);
MCELL_API mcell_status mcell_experiment_set_window_km(mcell_experiment* exp, double x_km, double y_km);
MCELL_API mcell_status mcell_experiment_set_workers(mcell_experiment* exp, int workers);
MCELL_API mcell_status mcell_experiment_set_backhaul_demand(mcell_experiment* exp, double p);
MCELL_API mcell_status mcell_experiment_clear_targets(mcell_experiment* exp);
MCELL_API mcell_status mcell_experiment_add_target(mcell_experiment* exp, mcell_target target);

/* `thetas` (linear) may be NULL to use the params threshold. */
MCELL_API mcell_status mcell_experiment_run(const mcell_experiment* exp, const double* thetas,
                                            size_t n_thetas, mcell_results** out);
MCELL_API void mcell_results_destroy(mcell_results* results);
MCELL_API mcell_status mcell_results_estimate(const mcell_results* results, mcell_target target,
                                              size_t theta_index, mcell_estimate* out);
MCELL_API mcell_status mcell_results_modes(const mcell_results* results, long long* share_backhaul,
                                           long long* share_cue, long long* exclusive_al);
MCELL_API mcell_status mcell_results_counters(const mcell_results* results, long long* floored,
                                              long long* dl_fallbacks);

/* Sweeps ----------------------------------------------------------------- */

/* Rows follow `grid`; per-point failures are stored in the cells. */
MCELL_API mcell_status mcell_sweep_run(const mcell_experiment* exp, const char* axis,
                                       const double* grid, size_t n, int simulate,
                                       mcell_sweep** out);
MCELL_API void mcell_sweep_destroy(mcell_sweep* sweep);
MCELL_API size_t mcell_sweep_row_count(const mcell_sweep* sweep);
MCELL_API mcell_status mcell_sweep_get_cell(const mcell_sweep* sweep, size_t row, mcell_target target,
                                            mcell_sweep_cell* out);
/* Empty string when the cell has no error; NULL on bad arguments. */
MCELL_API const char* mcell_sweep_cell_error(const mcell_sweep* sweep, size_t row, mcell_target target);
MCELL_API const char* mcell_sweep_cell_warning(const mcell_sweep* sweep, size_t row,
                                               mcell_target target, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* MOBICELL_MOBICELL_H */
