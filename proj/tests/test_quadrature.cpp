#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mobicell/error.hpp"
#include "mobicell/quadrature.hpp"

using namespace mobicell;

TEST_SUITE("quadrature") {

TEST_CASE("smooth and endpoint-singular integrands") {
  const QuadratureSpec tight{1e-12, 1e-12, 2000};
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, tight).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Integrable singularity at the open endpoint.
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.converged);
  // Narrow peak bracketed by breakpoints.
  const std::vector<double> br{0.0005, 0.001, 0.0015};
  const auto peak = integrate([](double x) { return std::exp(-1e8 * (x - 0.001) * (x - 0.001)); }, 0.0, 1.0,
                              tight, br);
  CHECK(peak.value == doctest::Approx(std::sqrt(std::numbers::pi / 1e8)).epsilon(1e-8));
}

TEST_CASE("budget exhaustion is reported, bad input rejected") {
  const QuadratureSpec tiny{1e-15, 1e-15, 3};
  const auto r = integrate([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, tiny);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0, QuadratureSpec{}), Error);
  CHECK_THROWS_AS(validate(QuadratureSpec{0.0, 1e-7, 10}), Error);
  try {
    integrate([](double) { return NAN; }, 0.0, 1.0, QuadratureSpec{});
    FAIL("NaN integrand accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::quadrature);
  }
}

}
