#include "mobicell/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mobicell/error.hpp"

namespace mobicell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesTol = 1e-10;
constexpr double kSeriesMaxTerm = 1e5;
constexpr double kClampSlack = 1e-6;
// exp(-x) underflows past this; integrands are cut to 0 there.
constexpr double kExpCut = 745.0;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_alpha4(const SystemParams& p, const char* what) {
  if (p.alpha_i != 4.0) {
    std::ostringstream os;
    os << what << ": closed form holds for alpha_i = 4 only (got " << p.alpha_i << ")";
    throw Error(ErrorCode::unsupported_exponent, os.str());
  }
}

void require_kappa(const SystemParams& p, int kappa, const char* what) {
  if (p.kappa != kappa) {
    std::ostringstream os;
    os << what << ": requires kappa = " << kappa << " (got " << p.kappa << ")";
    throw Error(ErrorCode::parameter, os.str());
  }
}

void require_series_limits(const SystemParams& p) {
  if (p.j_max < 1) throw Error(ErrorCode::parameter, "j_max must be >= 1");
  if (p.q_max < 1) throw Error(ErrorCode::parameter, "q_max must be >= 1");
  if (!(p.k_factor >= 0.0)) throw Error(ErrorCode::parameter, "k_factor must be >= 0");
}

double checked_probability(double raw, const char* what) {
  if (!std::isfinite(raw) || raw < -kClampSlack || raw > 1.0 + kClampSlack) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": raw probability " << raw << " outside [0, 1] beyond tolerance";
    throw Error(ErrorCode::numerical, os.str());
  }
  return std::clamp(raw, 0.0, 1.0);
}

// theta = e^tau - 1 with tau = 1/g - 1; +inf once it overflows.
double theta_from_g(double g) { return std::expm1(1.0 / g - 1.0); }

std::vector<double> g_breaks(std::initializer_list<double> taus) {
  std::vector<double> out;
  for (double t : taus)
    if (std::isfinite(t) && t > 0.0) out.push_back(1.0 / (1.0 + t));
  return out;
}

void note_quadrature(AnalyticResult& r, const QuadratureResult& q, const char* what) {
  r.est_error += q.est_error;
  if (!q.converged)
    r.warnings.push_back(std::string(what) + ": quadrature did not reach tolerance");
}

// ln|Psi(x, n)| with its sign; sign 0 when the reciprocal Gamma vanishes.
double log_psi(double x, int n, int& sign) {
  const double d = x - n + 1.0;
  if (d <= 0.0 && d == std::floor(d)) {
    sign = 0;
    return -std::numeric_limits<double>::infinity();
  }
  sign = 1;
  if (d < 0.0 && static_cast<long long>(std::ceil(-d)) % 2 != 0) sign = -1;
  return std::lgamma(x + 1.0) - std::lgamma(d);
}

// ln of K^j / (e^K j! n!), -inf where the Poisson weight is exactly 0.
double log_weight(double k, int j, int n) {
  if (k == 0.0 && j > 0) return -std::numeric_limits<double>::infinity();
  const double lk = (j == 0) ? 0.0 : j * std::log(k);
  return lk - k - std::lgamma(j + 1.0) - std::lgamma(n + 1.0);
}

double al_y(const SystemParams& p, double log_theta) {
  const double omega = omega_kappa(p);
  if (omega == 0.0) return 0.0;
  return omega * std::exp((2.0 / p.alpha_i) * log_theta) / p.p_a.linear_mw;
}

void series_warnings(AnalyticResult& r, const detail::SeriesSum& s) {
  if (s.last_row > kSeriesTol)
    r.warnings.push_back("p_al: j-truncation not converged (last row " +
                         std::to_string(s.last_row) + ")");
  if (s.last_column > kSeriesTol)
    r.warnings.push_back("p_al: q-truncation not converged (last column " +
                         std::to_string(s.last_column) + ")");
  if (s.largest_term > kSeriesMaxTerm)
    r.warnings.push_back("p_al: cancellation between terms up to " +
                         std::to_string(s.largest_term));
}

}  // namespace

double AnalyticResult::diagnostic(std::string_view name) const {
  for (const auto& [k, v] : diagnostics)
    if (k == name) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

// Kernels ------------------------------------------------------------------

double rho_kernel(double theta, double alpha, const QuadratureSpec& quad) {
  if (!(theta > 0.0)) throw Error(ErrorCode::parameter, "rho_kernel: theta must be > 0");
  if (!(alpha > 2.0)) throw Error(ErrorCode::divergent, "rho_kernel: alpha must be > 2");
  const double a = alpha / 2.0;
  const double lower = std::pow(theta, -2.0 / alpha);
  const double upper = lower + 1.0;

  // Head on [lower, lower + 1] directly; tail through u = upper * t^(-1/(a-1)),
  // which turns u^-a du into a bounded integrand on (0, 1].
  auto head = [a](double u) { return 1.0 / (1.0 + std::pow(u, a)); };
  const double ua = std::pow(upper, a);
  const double e = a / (a - 1.0);
  auto tail = [=](double t) { return (upper / (a - 1.0)) / (std::pow(t, e) + ua); };

  const auto h = integrate(head, lower, upper, quad);
  const auto t = integrate(tail, 0.0, 1.0, quad);
  if (!h.converged || !t.converged)
    throw Error(ErrorCode::quadrature, "rho_kernel: quadrature did not converge");
  return std::pow(theta, 2.0 / alpha) * (h.value + t.value);
}

double rho_closed_form_alpha4(double theta) {
  if (!(theta >= 0.0)) throw Error(ErrorCode::parameter, "rho: theta must be >= 0");
  if (theta == 0.0) return 0.0;
  const double s = std::sqrt(theta);
  return s * (kPi / 2.0 - std::atan(1.0 / s));
}

double beta_kernel(double alpha) {
  if (!(alpha > 2.0))
    throw Error(ErrorCode::divergent, "beta_kernel: interference diverges for alpha <= 2");
  const double x = 2.0 * kPi / alpha;
  return x / std::sin(x);
}

double psi_ratio(double x, int n) {
  int sign = 0;
  const double l = log_psi(x, n, sign);
  return sign == 0 ? 0.0 : sign * std::exp(l);
}

double omega_kappa(const SystemParams& p) {
  const double e = 2.0 / p.alpha_i;
  const double spread = std::pow(p.gamma * p.epsilon * std::pow(p.r_av_max, p.alpha_o), e);
  const double tiers = p.lambda_m * std::pow(p.p_m.linear_mw, e) +
                       p.kappa * p.lambda_s * std::pow(p.p_s.linear_mw, e);
  return kPi * spread * tiers * beta_kernel(p.alpha_i);
}

double xi_series(double k_factor, double alpha, int j_max, int q_max) {
  if (j_max < 0 || q_max < 0) throw Error(ErrorCode::parameter, "xi: negative truncation");
  if (!(k_factor >= 0.0)) throw Error(ErrorCode::parameter, "xi: k_factor must be >= 0");
  CompensatedSum sum;
  for (int j = 0; j <= j_max; ++j) {
    for (int m = 0; m <= j; ++m) {
      const int n = j - m;
      const double lw = log_weight(k_factor, j, n);
      if (!std::isfinite(lw)) continue;
      const double sw = (n % 2 == 0) ? 1.0 : -1.0;
      for (int q = 0; q <= q_max; ++q) {
        int sp = 0;
        const double lp = log_psi(2.0 * q / alpha, n, sp);
        if (sp == 0) continue;
        sum.add(sw * sp * std::exp(lw + lp));
      }
    }
  }
  return sum.value();
}

// Backhaul ---------------------------------------------------------------------

double success_link_y1(const SystemParams& p) {
  return p.gamma * p.epsilon * p.theta * p.p_a.linear_mw /
         (p.p_m.linear_mw * kPi * kPi * p.lambda_m * p.lambda_m * std::pow(p.r_am, 4));
}

double success_link_y2(const SystemParams& p) {
  return p.gamma * p.epsilon * p.theta * p.p_a.linear_mw / (p.p_m.linear_mw * std::pow(p.r_am, 4));
}

namespace {

double z_kappa1(const SystemParams& p, double theta) {
  return rho_closed_form_alpha4(theta) +
         (p.lambda_s / p.lambda_m) * (kPi / 2.0) *
             std::sqrt(p.p_s.linear_mw * theta / p.p_m.linear_mw) +
         1.0;
}

// integral_0^inf exp(-v z) / (1 + y v^2) dv on the unit interval. Written in
// s = v z, so the mass stays near w = 1/2 however large z grows.
QuadratureResult bh_unit_integral(double z, double y, const QuadratureSpec& quad) {
  const double c = y / (z * z);
  auto f = [c](double w) {
    const double s = (1.0 - w) / w;
    if (s > kExpCut) return 0.0;
    const double inv = 1.0 / w;
    return inv * inv * std::exp(-s) / (1.0 + c * s * s);
  };
  std::vector<double> breaks{0.5, 1.0 / 11.0};
  if (c > 0.0) breaks.push_back(1.0 / (1.0 + 1.0 / std::sqrt(c)));
  QuadratureSpec scaled = quad;
  scaled.abs_tol = quad.abs_tol * z;
  auto r = integrate(f, 0.0, 1.0, scaled, breaks);
  r.value /= z;
  r.est_error /= z;
  return r;
}

}  // namespace

AnalyticResult p_bh_kappa1_given_y(const SystemParams& p, double y1, const QuadratureSpec& quad) {
  validate(p);
  require_alpha4(p, "p_bh_kappa1");
  require_kappa(p, 1, "p_bh_kappa1");
  if (!(y1 >= 0.0)) throw Error(ErrorCode::parameter, "p_bh_kappa1: Y1 must be >= 0");
  AnalyticResult r;
  const double z = z_kappa1(p, p.theta);
  const auto q = bh_unit_integral(z, y1, quad);
  note_quadrature(r, q, "p_bh_kappa1");
  r.value = checked_probability(q.value, "p_bh_kappa1");
  r.diagnostics = {{"Z", z}, {"Y1", y1}, {"rho", rho_closed_form_alpha4(p.theta)}};
  return r;
}

AnalyticResult p_bh_kappa1(const SystemParams& p, const QuadratureSpec& quad) {
  validate(p);
  return p_bh_kappa1_given_y(p, success_link_y1(p), quad);
}

AnalyticResult p_bh_kappa0_given_y(const SystemParams& p, double y2, const QuadratureSpec& quad) {
  validate(p);
  require_alpha4(p, "p_bh_kappa0");
  require_kappa(p, 0, "p_bh_kappa0");
  if (!(y2 >= 0.0)) throw Error(ErrorCode::parameter, "p_bh_kappa0: Y2 must be >= 0");
  AnalyticResult r;
  const double rho = rho_closed_form_alpha4(p.theta);
  const double zp = kPi * p.lambda_m * (1.0 + rho);
  auto f = [zp, y2](double z) {
    const double x = (1.0 - z) / z;
    const double x2 = x * x;
    if (zp * x2 > kExpCut) return 0.0;
    const double inv = 1.0 / z;
    return inv * inv * x * std::exp(-zp * x2) / (1.0 + y2 * x2 * x2);
  };
  // The mass sits at r ~ 1/sqrt(Z'), i.e. z ~ 1/(1 + r): hundreds of meters
  // put it in the first fraction of a percent of the unit interval.
  const double r0 = 1.0 / std::sqrt(zp);
  std::vector<double> rs{r0 / 8, r0 / 2, r0, 2 * r0, 4 * r0, 8 * r0};
  if (y2 > 0.0) rs.push_back(std::pow(y2, -0.25));
  std::vector<double> breaks;
  for (double x : rs) breaks.push_back(1.0 / (1.0 + x));
  const auto q = integrate(f, 0.0, 1.0, quad, breaks);
  note_quadrature(r, q, "p_bh_kappa0");
  const double scale = 2.0 * kPi * p.lambda_m;
  r.est_error *= scale;
  r.value = checked_probability(scale * q.value, "p_bh_kappa0");
  r.diagnostics = {{"Z_prime", zp}, {"Y2", y2}, {"rho", rho}};
  return r;
}

AnalyticResult p_bh_kappa0(const SystemParams& p, const QuadratureSpec& quad) {
  validate(p);
  return p_bh_kappa0_given_y(p, success_link_y2(p), quad);
}

AnalyticResult p_bh(const SystemParams& p, const QuadratureSpec& quad) {
  return p.kappa == 1 ? p_bh_kappa1(p, quad) : p_bh_kappa0(p, quad);
}

// Cellular downlink ----------------------------------------------------------

AnalyticResult p_dl(const SystemParams& p) {
  validate(p);
  require_alpha4(p, "p_dl");
  const double pm = p.p_m.linear_mw;
  const double exponent = (kPi * p.r_u * p.r_u / 2.0) * std::sqrt(p.theta / pm) *
                          (p.lambda_m * std::sqrt(pm) + p.kappa * p.lambda_s * std::sqrt(p.p_s.linear_mw));
  const double ratio = p.r_u / p.r_mu;
  const double numerator = std::exp(-exponent);
  AnalyticResult r;
  r.value = checked_probability(numerator / (1.0 + (p.theta * p.epsilon / pm) * std::pow(ratio, 4)),
                                "p_dl");
  // Laplace-transform reading of the AL term: squared ratio, no epsilon.
  const double variant = numerator / (1.0 + (p.theta / pm) * ratio * ratio);
  r.diagnostics = {{"exponent", exponent}, {"squared_ratio_exponent", variant}};
  return r;
}

// Access link ------------------------------------------------------------------

namespace detail {

SeriesSum al_series(const SystemParams& p, SumOrder order) {
  const int jm = p.j_max, qm = p.q_max;
  const double y = al_y(p, std::log(p.theta));
  const double ly = y > 0.0 ? std::log(y) : -std::numeric_limits<double>::infinity();
  const double alpha = p.alpha_i;

  SeriesSum out;
  CompensatedSum total, last_row;
  double last_col = 0.0;
  auto visit = [&](int j, int m, int q) {
    if (q > 0 && y == 0.0) return;
    const int n = j - m;
    const double lw = log_weight(p.k_factor, j, n);
    if (!std::isfinite(lw)) return;
    int sp = 0;
    const double lp = log_psi(2.0 * q / alpha, n, sp);
    if (sp == 0) return;
    const double mag = std::exp(lw + (q > 0 ? q * ly : 0.0) - std::lgamma(q + 1.0) + lp);
    const double sign = (((n + q) % 2 == 0) ? 1.0 : -1.0) * sp;
    const double term = sign * mag;
    total.add(term);
    if (j == jm) last_row.add(term);
    if (q == qm) last_col += mag;
    out.largest_term = std::max(out.largest_term, mag);
  };

  if (order == SumOrder::canonical) {
    for (int j = 0; j <= jm; ++j)
      for (int m = 0; m <= j; ++m)
        for (int q = 0; q <= qm; ++q) visit(j, m, q);
  } else {
    for (int j = jm; j >= 0; --j)
      for (int m = j; m >= 0; --m)
        for (int q = qm; q >= 0; --q) visit(j, m, q);
  }
  out.value = total.value();
  out.last_row = std::abs(last_row.value());
  out.last_column = last_col;
  return out;
}

AlPowerSeries::AlPowerSeries(const SystemParams& p)
    : j_max_(p.j_max), q_max_(p.q_max),
      coeff_(static_cast<std::size_t>(p.j_max + 1) * (p.q_max + 1), 0.0) {
  for (int j = 0; j <= j_max_; ++j) {
    for (int q = 0; q <= q_max_; ++q) {
      CompensatedSum c;
      for (int m = 0; m <= j; ++m) {
        const int n = j - m;
        const double lw = log_weight(p.k_factor, j, n);
        if (!std::isfinite(lw)) continue;
        int sp = 0;
        const double lp = log_psi(2.0 * q / p.alpha_i, n, sp);
        if (sp == 0) continue;
        const double sign = (((n + q) % 2 == 0) ? 1.0 : -1.0) * sp;
        c.add(sign * std::exp(lw + lp - std::lgamma(q + 1.0)));
      }
      coeff_[static_cast<std::size_t>(j) * (q_max_ + 1) + q] = c.value();
    }
  }
}

SeriesSum AlPowerSeries::evaluate(double y) const {
  SeriesSum out;
  CompensatedSum total;
  double row = 0.0;
  double col = 0.0;
  for (int j = 0; j <= j_max_; ++j) {
    CompensatedSum row_sum;
    double yq = 1.0;
    for (int q = 0; q <= q_max_; ++q) {
      const double term = coeff_[static_cast<std::size_t>(j) * (q_max_ + 1) + q] * yq;
      total.add(term);
      row_sum.add(term);
      out.largest_term = std::max(out.largest_term, std::abs(term));
      if (q == q_max_) col += std::abs(term);
      yq *= y;
    }
    if (j == j_max_) row = std::abs(row_sum.value());
  }
  out.value = total.value();
  out.last_row = row;
  out.last_column = col;
  return out;
}

bool AlPowerSeries::converged(const SeriesSum& s) const {
  return s.last_row <= kSeriesTol && s.last_column <= kSeriesTol &&
         s.largest_term <= kSeriesMaxTerm;
}

}  // namespace detail

AnalyticResult p_al(const SystemParams& p) {
  validate(p);
  require_series_limits(p);
  const auto s = detail::al_series(p, detail::SumOrder::canonical);
  AnalyticResult r;
  r.terms_j = p.j_max;
  r.terms_q = p.q_max;
  series_warnings(r, s);
  r.est_error = s.last_row + s.last_column + s.largest_term * 1e-16 * (p.j_max + 1) * (p.q_max + 1);
  r.value = checked_probability(s.value, "p_al");
  r.diagnostics = {{"Omega", omega_kappa(p)},
                   {"beta", beta_kernel(p.alpha_i)},
                   {"y", al_y(p, std::log(p.theta))}};
  return r;
}

// Power control ---------------------------------------------------------------

PowerControl al_transmit_power(double target, const SystemParams& p) {
  validate(p);
  require_alpha4(p, "al_transmit_power");
  require_series_limits(p);
  if (!(target > 0.0) || target > 1.0)
    throw Error(ErrorCode::parameter, "al_transmit_power: target must lie in (0, 1]");
  PowerControl pc;
  pc.xi = xi_series(p.k_factor, p.alpha_i, p.j_max, p.q_max);
  pc.omega = omega_kappa(p);
  if (target >= pc.xi) {
    std::ostringstream os;
    os << "al_transmit_power: target " << target << " is not below Xi = " << pc.xi;
    throw Error(ErrorCode::infeasible, os.str());
  }
  pc.p_a.linear_mw = pc.omega * std::sqrt(p.theta) / (std::log(pc.xi) - std::log(target));
  return pc;
}

double p_al_power_law(const SystemParams& p) {
  validate(p);
  require_alpha4(p, "p_al_power_law");
  require_series_limits(p);
  const double xi = xi_series(p.k_factor, p.alpha_i, p.j_max, p.q_max);
  return xi * std::exp(-omega_kappa(p) * std::sqrt(p.theta) / p.p_a.linear_mw);
}

SuccessLinkParams success_link_params(const SystemParams& p, double target) {
  const auto pc = al_transmit_power(target, p);
  SystemParams q = p;
  q.p_a = pc.p_a;
  return {success_link_y1(q), success_link_y2(q)};
}

// Ergodic rates -----------------------------------------------------------------

AnalyticResult ergodic_rate_bh(const SystemParams& p, const QuadratureSpec& quad) {
  validate(p);
  require_alpha4(p, "ergodic_rate_bh");
  const double f = p.p_a.linear_mw * p.gamma * p.epsilon / (p.p_m.linear_mw * std::pow(p.r_am, 4));
  const double lam2pi2 = p.lambda_m * p.lambda_m * kPi * kPi;
  AnalyticResult r;
  bool inner_ok = true;
  double inner_err = 0.0;
  auto outer = [&](double g) {
    const double theta = theta_from_g(g);
    if (!std::isfinite(theta)) return 0.0;
    const double senb = p.kappa * (p.lambda_s / p.lambda_m) * (kPi / 2.0) *
                        std::sqrt(p.p_s.linear_mw * theta / p.p_m.linear_mw);
    const double z = 1.0 + rho_closed_form_alpha4(theta) + senb;
    const auto in = bh_unit_integral(z, f * theta / lam2pi2, quad);
    inner_ok = inner_ok && in.converged;
    inner_err = std::max(inner_err, in.est_error);
    return in.value / (g * g);
  };
  const auto breaks = g_breaks({0.5, 2.0, 5.0, 10.0, 20.0, 40.0});
  const auto q = integrate(outer, 0.0, 1.0, quad, breaks);
  note_quadrature(r, q, "ergodic_rate_bh");
  if (!inner_ok) r.warnings.push_back("ergodic_rate_bh: inner quadrature did not reach tolerance");
  r.est_error += inner_err;
  r.value = q.value;
  r.diagnostics = {{"F", f}};
  return r;
}

AnalyticResult ergodic_rate_dl(const SystemParams& p, const QuadratureSpec& quad) {
  validate(p);
  require_alpha4(p, "ergodic_rate_dl");
  const double a = kPi * p.r_u * p.r_u *
                   (p.lambda_m + p.lambda_s * p.kappa * std::sqrt(p.p_s.linear_mw / p.p_m.linear_mw)) / 2.0;
  const double ratio = p.r_u / p.r_mu;
  const double b = ratio * ratio / p.p_m.linear_mw;
  if (a == 0.0 && b == 0.0)
    throw Error(ErrorCode::divergent, "ergodic_rate_dl: interference-free link, rate diverges");
  AnalyticResult r;
  auto f = [a, b](double g) {
    const double theta = theta_from_g(g);
    if (!std::isfinite(theta)) return 0.0;
    const double x = a * std::sqrt(theta);
    if (x > kExpCut) return 0.0;
    return std::exp(-x) / (g * g * (1.0 + b * theta));
  };
  const double tau_a = a > 0.0 ? 2.0 * std::log1p(1.0 / a) : 0.0;
  const double tau_b = b > 0.0 ? std::log1p(1.0 / b) : 0.0;
  const auto breaks = g_breaks({1.0, 5.0, tau_a, tau_a + 4.0, tau_b, tau_b + 4.0});
  const auto q = integrate(f, 0.0, 1.0, quad, breaks);
  note_quadrature(r, q, "ergodic_rate_dl");
  if (a < 1e-3)
    r.warnings.push_back("ergodic_rate_dl: near interference-free link, rate set by the far tail");
  r.value = q.value;
  r.diagnostics = {{"A_tilde", a}, {"B_tilde", b}};
  return r;
}

AnalyticResult ergodic_rate_al(const SystemParams& p, const QuadratureSpec& quad) {
  validate(p);
  require_series_limits(p);
  const double omega = omega_kappa(p);
  if (omega == 0.0)
    throw Error(ErrorCode::divergent, "ergodic_rate_al: interference-free link, rate diverges");
  const detail::AlPowerSeries series(p);
  const double pa = p.p_a.linear_mw;

  // Largest y at which the truncated series is still trustworthy.
  double y_lo = 0.0, y_hi = 1.0;
  while (series.converged(series.evaluate(y_hi)) && y_hi < 1e6) {
    y_lo = y_hi;
    y_hi *= 2.0;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (y_lo + y_hi);
    (series.converged(series.evaluate(mid)) ? y_lo : y_hi) = mid;
  }
  const double y_star = y_lo;
  if (!(y_star > 0.0))
    throw Error(ErrorCode::numerical, "ergodic_rate_al: series does not converge at any threshold");
  const double tau_star = std::log1p(std::pow(y_star * pa / omega, p.alpha_i / 2.0));
  const double g_star = 1.0 / (1.0 + tau_star);

  auto f = [&](double g) {
    const double tau = 1.0 / g - 1.0;
    const double log_theta = tau > 30.0 ? tau : std::log(std::expm1(tau));
    const double y = omega * std::exp((2.0 / p.alpha_i) * log_theta) / pa;
    return series.evaluate(std::min(y, y_star)).value / (g * g);
  };
  AnalyticResult r;
  r.terms_j = p.j_max;
  r.terms_q = p.q_max;
  const auto q = integrate(f, g_star, 1.0, quad, g_breaks({0.5, 2.0, 5.0}));
  note_quadrature(r, q, "ergodic_rate_al");

  // For p ~ exp(-y) with y growing like e^(tau/2), the omitted tail is at most 2 p(y*) / y*.
  const double p_star = std::max(0.0, series.evaluate(y_star).value);
  const double tail = 2.0 * p_star / y_star;
  r.est_error += tail;
  if (tail > quad.abs_tol) {
    std::ostringstream os;
    os << "ergodic_rate_al: series truncation limits the integral to tau <= " << tau_star
       << "; omitted tail <= " << tail;
    r.warnings.push_back(os.str());
  }
  if (tau_star > 50.0)
    r.warnings.push_back("ergodic_rate_al: near interference-free link, rate set by the far tail");
  r.value = q.value;
  r.diagnostics = {{"Omega", omega}, {"tau_cutoff", tau_star}, {"y_cutoff", y_star},
                   {"p_at_cutoff", p_star}};
  return r;
}

}  // namespace mobicell
