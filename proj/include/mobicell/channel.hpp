#pragma once

#include <random>

#include "mobicell/params.hpp"

namespace mobicell {

// One RNG engine type across the library; each trial owns its own instance.
using Rng = std::mt19937_64;

/// d^(-alpha). Throws Error(singularity) at d == 0 and Error(parameter) for
/// alpha <= 2 or d < 0.
double path_loss(double d, double alpha);

enum class FadingModel { rayleigh, rician };

struct FadingDraw {
  double value = 0.0;  // power gain h
  FadingModel model = FadingModel::rayleigh;
  double k_factor = 0.0;
};

FadingDraw sample_rayleigh_power(Rng& rng);

// (sqrt(K) + a)^2 + b^2 with a, b ~ N(0, 1/2); mean K + 1.
FadingDraw sample_rician_power(double k_factor, Rng& rng);

struct RicianCdf {
  double probability = 0.0;
  int terms_used = 0;
  bool converged = true;
};

/// Poisson-mixture series for the CDF of the unit-scatter Rician power:
/// F(x) = sum_j e^-K K^j / j! * P(j + 1, x), P the regularized lower
/// incomplete gamma. Terms are built by recurrence, never from factorials.
RicianCdf rician_power_cdf(double x, double k_factor, int max_terms);

PowerLevel dbm_to_linear(double dbm);
double linear_to_dbm(PowerLevel p);
double db_to_linear(double db);
double linear_to_db(double ratio);

}  // namespace mobicell
