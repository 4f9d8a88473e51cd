#pragma once

#include <functional>
#include <initializer_list>
#include <span>

namespace mobicell {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_subdivisions = 2000;
};

void validate(const QuadratureSpec& spec);

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]: the panel with the
/// largest error estimate is bisected until the summed estimate is within
/// max(abs_tol, rel_tol * |I|) or the subdivision budget is spent.
/// Endpoints are never evaluated. `breaks` seeds the initial partition.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec, std::span<const double> breaks = {});

}  // namespace mobicell
