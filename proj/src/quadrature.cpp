#include "mobicell/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mobicell/error.hpp"

namespace mobicell {

void validate(const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0)) throw Error(ErrorCode::parameter, "quadrature: abs_tol must be > 0");
  if (!(spec.rel_tol > 0.0)) throw Error(ErrorCode::parameter, "quadrature: rel_tol must be > 0");
  if (spec.max_subdivisions < 1)
    throw Error(ErrorCode::parameter, "quadrature: max_subdivisions must be >= 1");
}

namespace {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One 15-point Kronrod panel with its embedded 7-point Gauss rule. The error
// follows the QUADPACK heuristic, with a floor at the rounding level. (Boost's
// non-adaptive estimate comes back divided by the half-width.)
Panel apply_rule(const std::function<double(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double center = 0.5 * (a + b), half = 0.5 * (b - a);

  std::array<double, 15> fx{};
  fx[0] = f(center);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fx[2 * i - 1] = f(center - half * xk[i]);
    fx[2 * i] = f(center + half * xk[i]);
  }
  for (double v : fx)
    if (!std::isfinite(v)) throw Error(ErrorCode::quadrature, "quadrature: non-finite integrand value");

  double kron = wk[0] * fx[0], gauss = wg[0] * fx[0], abs_sum = wk[0] * std::abs(fx[0]);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double pair = fx[2 * i - 1] + fx[2 * i];
    kron += wk[i] * pair;
    abs_sum += wk[i] * (std::abs(fx[2 * i - 1]) + std::abs(fx[2 * i]));
    if (i % 2 == 0) gauss += wg[i / 2] * pair;
  }
  const double mean = 0.5 * kron;
  double asc = wk[0] * std::abs(fx[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i)
    asc += wk[i] * (std::abs(fx[2 * i - 1] - mean) + std::abs(fx[2 * i] - mean));

  const double value = kron * half;
  abs_sum *= std::abs(half);
  asc *= std::abs(half);
  double error = std::abs((kron - gauss) * half);
  if (asc != 0.0 && error != 0.0) error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) error = std::max(error, 50.0 * eps * abs_sum);
  if (!std::isfinite(value) || !std::isfinite(error))
    throw Error(ErrorCode::quadrature, "quadrature: non-finite integrand value");
  return {a, b, value, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec, std::span<const double> breaks) {
  validate(spec);
  if (!(b > a)) throw Error(ErrorCode::parameter, "quadrature: need a < b");

  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) panels.push(apply_rule(f, cuts[i], cuts[i + 1]));

  auto totals = [&panels]() {
    // Re-summing from the heap keeps the tally free of cancellation drift.
    auto copy = panels;
    double v = 0.0, e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };

  QuadratureResult out;
  int splits = 0;
  double value = 0.0, error = 0.0;
  std::tie(value, error) = totals();
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (splits >= spec.max_subdivisions) {
      out.converged = false;
      break;
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      break;
    }
    panels.pop();
    const Panel left = apply_rule(f, worst.a, mid);
    const Panel right = apply_rule(f, mid, worst.b);
    panels.push(left);
    panels.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (++splits % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();
  out.value = value;
  out.est_error = error;
  out.subdivisions = splits;
  return out;
}

}  // namespace mobicell
