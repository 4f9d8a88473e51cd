#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mobicell/params.hpp"
#include "mobicell/quadrature.hpp"

namespace mobicell {

/// Probability or rate (nats/s/Hz) with numerical diagnostics. Kernel values
/// that went into the result (Z, Y1, Omega, Xi, ...) are listed by name.
struct AnalyticResult {
  double value = 0.0;
  double est_error = 0.0;
  int terms_j = 0;
  int terms_q = 0;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> diagnostics;

  /// NaN when `name` is absent.
  double diagnostic(std::string_view name) const;
};

// Kernels ------------------------------------------------------------------

/// theta^(2/alpha) * integral_{theta^(-2/alpha)}^inf du / (1 + u^(alpha/2)),
/// evaluated numerically.
double rho_kernel(double theta, double alpha, const QuadratureSpec& quad = {});

/// sqrt(theta) * (pi/2 - atan(1/sqrt(theta))), the alpha = 4 value of rho.
double rho_closed_form_alpha4(double theta);

/// (2 pi / alpha) / sin(2 pi / alpha). Error(divergent) for alpha <= 2.
double beta_kernel(double alpha);

/// Gamma(x + 1) / Gamma(x - n + 1) through log-Gamma, taking 1/Gamma = 0 at
/// non-positive integers.
double psi_ratio(double x, int n);

/// Omega_kappa without the P_a factor:
/// pi (gamma eps r_av^alpha_o)^(2/alpha_i) (lambda_M P_M^(2/alpha_i)
///   + kappa lambda_S P_S^(2/alpha_i)) beta(alpha_i).
double omega_kappa(const SystemParams& params);

/// Power-control normalizer. The q-sum does not converge, so the value is a
/// function of the truncation (j_max, q_max) as well as (K, alpha).
double xi_series(double k_factor, double alpha, int j_max, int q_max);

// Success probabilities -----------------------------------------------------

/// BH success probability with small cells active (kappa = 1, alpha_i = 4).
AnalyticResult p_bh_kappa1(const SystemParams& params, const QuadratureSpec& quad = {});
/// Same with the success-link parameter Y1 supplied directly.
AnalyticResult p_bh_kappa1_given_y(const SystemParams& params, double y1,
                                   const QuadratureSpec& quad = {});

/// BH success probability with small cells silent (kappa = 0, alpha_i = 4).
AnalyticResult p_bh_kappa0(const SystemParams& params, const QuadratureSpec& quad = {});
AnalyticResult p_bh_kappa0_given_y(const SystemParams& params, double y2,
                                   const QuadratureSpec& quad = {});

/// Dispatches on params.kappa.
AnalyticResult p_bh(const SystemParams& params, const QuadratureSpec& quad = {});

double success_link_y1(const SystemParams& params);
double success_link_y2(const SystemParams& params);

/// Closed-form shared cellular DL success probability (alpha_i = 4).
AnalyticResult p_dl(const SystemParams& params);

/// Truncated (j_max, q_max) Rician/PPP series for the AL success probability.
AnalyticResult p_al(const SystemParams& params);

// Power control ---------------------------------------------------------------

struct PowerControl {
  PowerLevel p_a;
  double xi = 0.0;
  double omega = 0.0;
};

/// P_a = Omega sqrt(theta) / (ln Xi - ln target). Error(infeasible) when
/// target >= Xi, Error(parameter) when target is not in (0, 1].
PowerControl al_transmit_power(double p_al_target, const SystemParams& params);

/// Xi * exp(-Omega sqrt(theta) / P_a) at params.p_a; inverts al_transmit_power.
double p_al_power_law(const SystemParams& params);

struct SuccessLinkParams {
  double y1 = 0.0;
  double y2 = 0.0;
};

/// Y1 and Y2 with P_a taken from al_transmit_power(target).
SuccessLinkParams success_link_params(const SystemParams& params, double p_al_target);

// Ergodic rates (nats/s/Hz) ----------------------------------------------------

AnalyticResult ergodic_rate_bh(const SystemParams& params, const QuadratureSpec& quad = {});
AnalyticResult ergodic_rate_dl(const SystemParams& params, const QuadratureSpec& quad = {});
AnalyticResult ergodic_rate_al(const SystemParams& params, const QuadratureSpec& quad = {});

namespace detail {

enum class SumOrder { canonical, reversed };

struct SeriesSum {
  double value = 0.0;
  double last_row = 0.0;     // |sum of the j = J row|
  double last_column = 0.0;  // sum of |q = Q terms|
  double largest_term = 0.0;
};

/// The AL triple series summed in (j, m, q) order, or with every loop reversed.
SeriesSum al_series(const SystemParams& params, SumOrder order);

/// The same series regrouped as a power series in y = Omega theta^(2/alpha) / P_a,
/// coefficients summed over m first. Used as the rate integrand.
class AlPowerSeries {
 public:
  explicit AlPowerSeries(const SystemParams& params);
  SeriesSum evaluate(double y) const;
  bool converged(const SeriesSum& s) const;

 private:
  int j_max_, q_max_;
  std::vector<double> coeff_;  // (j_max + 1) x (q_max + 1), row-major in j
};

}  // namespace detail

}  // namespace mobicell
