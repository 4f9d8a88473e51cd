#include "mobicell/channel.hpp"

#include <algorithm>
#include <cmath>

#include "mobicell/error.hpp"

namespace mobicell {

double path_loss(double d, double alpha) {
  if (!(alpha > 2.0))
    throw Error(ErrorCode::parameter, "path_loss: alpha must be > 2");
  if (d < 0.0 || !std::isfinite(d))
    throw Error(ErrorCode::parameter, "path_loss: distance must be finite and >= 0");
  if (d == 0.0)
    throw Error(ErrorCode::singularity, "path_loss: zero distance");
  return std::pow(d, -alpha);
}

FadingDraw sample_rayleigh_power(Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  return {exp1(rng), FadingModel::rayleigh, 0.0};
}

FadingDraw sample_rician_power(double k_factor, Rng& rng) {
  if (!(k_factor >= 0.0) || !std::isfinite(k_factor))
    throw Error(ErrorCode::parameter, "sample_rician_power: K must be >= 0");
  std::normal_distribution<double> scatter(0.0, std::sqrt(0.5));
  const double in_phase = std::sqrt(k_factor) + scatter(rng);
  const double quadrature = scatter(rng);
  return {in_phase * in_phase + quadrature * quadrature, FadingModel::rician, k_factor};
}

RicianCdf rician_power_cdf(double x, double k_factor, int max_terms) {
  if (!(x >= 0.0)) throw Error(ErrorCode::parameter, "rician_power_cdf: x must be >= 0");
  if (!(k_factor >= 0.0)) throw Error(ErrorCode::parameter, "rician_power_cdf: K must be >= 0");
  if (max_terms < 1) throw Error(ErrorCode::parameter, "rician_power_cdf: J must be >= 1");
  if (x == 0.0) return {0.0, 1, true};

  // poisson_j = e^-K K^j / j!, upper_j = e^-x sum_{m<=j} x^m / m! = Q(j + 1, x).
  double poisson = std::exp(-k_factor);
  double gamma_term = std::exp(-x);
  double upper = gamma_term;
  double cdf = 0.0;
  double mass = 0.0;  // Poisson weight already summed; the tail is below 1 - mass
  int j = 0;
  while (j < max_terms) {
    cdf += poisson * (1.0 - upper);
    mass += poisson;
    ++j;
    poisson *= k_factor / j;
    gamma_term *= x / j;
    upper += gamma_term;
    if (j > k_factor && poisson < 1e-17) break;
  }
  const bool converged = j < max_terms || 1.0 - mass <= 1e-12;
  return {std::clamp(cdf, 0.0, 1.0), j, converged};
}

PowerLevel dbm_to_linear(double dbm) { return {std::pow(10.0, dbm / 10.0)}; }
double linear_to_dbm(PowerLevel p) { return 10.0 * std::log10(p.linear_mw); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

}  // namespace mobicell
