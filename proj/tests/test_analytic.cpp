#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mobicell/analytic.hpp"
#include "mobicell/channel.hpp"
#include "mobicell/error.hpp"
#include "support.hpp"

using namespace mobicell;
using std::numbers::pi;
using testing_support::db_grid;

namespace {

const QuadratureSpec kTight{1e-13, 1e-12, 4000};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::numerical;
}

SystemParams baseline(int kappa) {
  SystemParams p;
  p.lambda_m = 2e-6;
  p.lambda_s = 2e-5;
  p.epsilon = 0.1;
  p.gamma = 1.0;
  p.kappa = kappa;
  return p;
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("rho kernel") {
  CHECK(rho_closed_form_alpha4(1.0) == doctest::Approx(pi / 4).epsilon(1e-14));
  CHECK(rho_closed_form_alpha4(0.1) == doctest::Approx(0.0974).epsilon(2e-3));
  CHECK(rho_kernel(1e-10, 4.0) < 1e-9);
  for (double t : {0.01, 0.1, 1.0, 10.0})
    CHECK(std::abs(rho_kernel(t, 4.0, kTight) - rho_closed_form_alpha4(t)) < 1e-9);

  // alpha = 3.5 against the map u = c / t on the original integral.
  const double alpha = 3.5, a = alpha / 2, theta = 0.5;
  const double c = std::pow(theta, -2 / alpha);
  const auto ref = integrate([&](double t) { return c * std::pow(t, a - 2) / (std::pow(t, a) + std::pow(c, a)); },
                             0.0, 1.0, kTight);
  CHECK(rho_kernel(theta, alpha, kTight) == doctest::Approx(std::pow(theta, 2 / alpha) * ref.value).epsilon(1e-9));
  CHECK(code_of([] { rho_kernel(1.0, 2.0); }) == ErrorCode::divergent);
}

TEST_CASE("beta kernel") {
  CHECK(std::abs(beta_kernel(4.0) - pi / 2) < 1e-12);
  CHECK(beta_kernel(3.5) == doctest::Approx(1.84136).epsilon(1e-5));
  CHECK(code_of([] { beta_kernel(2.0); }) == ErrorCode::divergent);
  CHECK(code_of([] { beta_kernel(1.5); }) == ErrorCode::divergent);
}

TEST_CASE("Psi is the falling factorial with reciprocal-Gamma zeros") {
  CHECK(psi_ratio(0.5, 0) == doctest::Approx(1.0));
  CHECK(psi_ratio(0.5, 2) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(psi_ratio(2.5, 3) == doctest::Approx(1.875).epsilon(1e-12));
  CHECK(psi_ratio(1.0, 2) == 0.0);
  CHECK(psi_ratio(0.0, 1) == 0.0);
  for (int q = 0; q <= 12; ++q)
    for (int n = 0; n <= 9; ++n) {
      const double x = q / 2.0;
      double falling = 1.0;
      for (int k = 0; k < n; ++k) falling *= x - k;
      CHECK(psi_ratio(x, n) == doctest::Approx(falling).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("Omega") {
  CHECK(omega_kappa(baseline(0)) == doctest::Approx(0.021121).epsilon(1e-4));
  SystemParams ideal = baseline(0);
  ideal.gamma = 0.0;
  CHECK(omega_kappa(ideal) == 0.0);
  // kappa adds the SeNB tier.
  const SystemParams p1 = baseline(1);
  const double e = std::pow(p1.gamma * p1.epsilon * std::pow(p1.r_av_max, p1.alpha_o), 0.5);
  CHECK(omega_kappa(p1) - omega_kappa(baseline(0)) ==
        doctest::Approx(pi * e * p1.lambda_s * std::sqrt(p1.p_s.linear_mw) * pi / 2).epsilon(1e-12));
}

TEST_CASE("p_bh with small cells active") {
  SystemParams p = baseline(1);
  p.theta = 1e-12;
  CHECK(p_bh_kappa1(p).value == doctest::Approx(1.0).epsilon(1e-5));
  for (double db : db_grid(-20, 20, 41)) {
    SystemParams q = baseline(1);
    q.theta = db_to_linear(db);
    SystemParams ideal = q;
    ideal.gamma = 0.0;
    CHECK(p_bh_kappa1(ideal).value >= p_bh_kappa1(q).value);
  }
  CHECK(code_of([] { p_bh_kappa1(baseline(0)); }) == ErrorCode::parameter);
  SystemParams alpha = baseline(1);
  alpha.alpha_i = 3.5;
  CHECK(code_of([&] { p_bh_kappa1(alpha); }) == ErrorCode::unsupported_exponent);
}

TEST_CASE("p_bh with small cells silent") {
  SystemParams p = baseline(0);
  p.theta = 1e-12;
  CHECK(p_bh_kappa0(p).value == doctest::Approx(1.0).epsilon(1e-3));
  double prev = 1.0;
  for (double db : db_grid(-20, 20, 41)) {
    SystemParams q = baseline(0);
    q.theta = db_to_linear(db);
    const double v = p_bh_kappa0(q).value;
    CHECK(v <= prev + 1e-12);
    prev = v;
    CHECK(std::abs(p_bh_kappa0_given_y(q, 0.0).value - 1.0 / (1.0 + rho_closed_form_alpha4(q.theta))) < 1e-6);
  }
  SystemParams alpha = baseline(0);
  alpha.alpha_i = 3.0;
  CHECK(code_of([&] { p_bh_kappa0(alpha); }) == ErrorCode::unsupported_exponent);
}

TEST_CASE("the two BH forms agree without SeNBs") {
  // r^4 Y2 = v^2 Y1 with v = lambda pi r^2, so the integrals coincide.
  for (double db : {-20.0, -5.0, 0.0, 10.0, 20.0}) {
    SystemParams a = baseline(0), b = baseline(1);
    a.theta = b.theta = db_to_linear(db);
    b.lambda_s = 0.0;
    CHECK(p_bh_kappa1(b, kTight).value == doctest::Approx(p_bh_kappa0(a, kTight).value).epsilon(1e-8));
    CHECK(success_link_y1(b) * pi * pi * b.lambda_m * b.lambda_m == doctest::Approx(success_link_y2(a)));
  }
}

TEST_CASE("p_dl") {
  SystemParams p;
  p.epsilon = 1e-9;
  p.lambda_m = 1e-15;
  p.lambda_s = 0.0;
  CHECK(p_dl(p).value == doctest::Approx(1.0).epsilon(1e-9));

  SystemParams q;
  q.lambda_m = 4e-6;
  q.lambda_s = 4e-5;
  q.kappa = 1;
  double prev = 0.0;
  for (double r : {60.0, 80.0, 100.0, 200.0, 350.0, 500.0}) {
    q.r_mu = r;
    const auto v = p_dl(q);
    CHECK(v.value > prev);
    prev = v.value;
    CHECK(std::isfinite(v.diagnostic("squared_ratio_exponent")));
  }
}

TEST_CASE("p_al basics") {
  SystemParams p;
  p.k_factor = 0.0;
  p.gamma = 1e-20;
  CHECK(p_al(p).value == doctest::Approx(1.0).epsilon(1e-9));

  // K = 0 leaves exp(-y).
  for (double db : {-20.0, 0.0, 20.0}) {
    SystemParams q;
    q.k_factor = 0.0;
    q.theta = db_to_linear(db);
    const double y = omega_kappa(q) * std::sqrt(q.theta) / q.p_a.linear_mw;
    CHECK(p_al(q).value == doctest::Approx(std::exp(-y)).epsilon(1e-12));
  }

  SystemParams d;
  SystemParams e = d;
  e.j_max = e.q_max = 90;
  CHECK(std::abs(p_al(d).value - p_al(e).value) < 1e-6);
  CHECK(p_al(d).warnings.empty());
}

TEST_CASE("p_al summation order and regrouping") {
  for (double db : {-20.0, -10.0, 0.0, 10.0, 20.0})
    for (double eps : {0.1, 0.8}) {
      SystemParams p;
      p.theta = db_to_linear(db);
      p.epsilon = eps;
      const auto c = detail::al_series(p, detail::SumOrder::canonical);
      const auto r = detail::al_series(p, detail::SumOrder::reversed);
      CHECK(std::abs(c.value - r.value) < 1e-12);
      const detail::AlPowerSeries series(p);
      const double y = omega_kappa(p) * std::sqrt(p.theta) / p.p_a.linear_mw;
      CHECK(std::abs(series.evaluate(y).value - c.value) < 1e-12);
    }
}

TEST_CASE("p_al truncation diagnostics and the clamp tolerance") {
  SystemParams p;
  p.j_max = 3;
  p.theta = db_to_linear(20.0);
  p.epsilon = 0.8;
  CHECK_FALSE(p_al(p).warnings.empty());

  // Q = 3 cannot represent exp(-67): the raw sum is far below 0.
  SystemParams q;
  q.k_factor = 0.0;
  q.q_max = 3;
  q.p_a = dbm_to_linear(-40.0);
  CHECK(code_of([&] { p_al(q); }) == ErrorCode::numerical);
}

TEST_CASE("Xi and the power-control law") {
  CHECK(xi_series(0.0, 4.0, 70, 70) == doctest::Approx(71.0).epsilon(1e-12));
  CHECK(xi_series(1.5848931924611136, 4.0, 70, 70) == doctest::Approx(2.23731).epsilon(1e-5));

  SystemParams p;
  double prev = 0.0;
  for (double t : {1e-9, 0.3, 0.5, 0.7, 0.9}) {
    const auto pc = al_transmit_power(t, p);
    CHECK(pc.p_a.linear_mw > prev);
    prev = pc.p_a.linear_mw;
    SystemParams q = p;
    q.p_a = pc.p_a;
    CHECK(p_al_power_law(q) == doctest::Approx(t).epsilon(1e-10));
  }
  CHECK(al_transmit_power(1e-300, p).p_a.linear_mw < 1e-3);
  CHECK(code_of([&] { al_transmit_power(0.0, p); }) == ErrorCode::parameter);
  SystemParams short_series = p;
  short_series.j_max = short_series.q_max = 50;  // Xi = 0.7635
  CHECK(code_of([&] { al_transmit_power(0.9, short_series); }) == ErrorCode::infeasible);
}

TEST_CASE("success-link parameters under power control") {
  SystemParams p;
  p.gamma = 0.0;
  const auto zero = success_link_params(p, 0.9);
  CHECK(zero.y1 == 0.0);
  CHECK(zero.y2 == 0.0);

  SystemParams q = baseline(1);
  const auto s = success_link_params(q, 0.9);
  CHECK(s.y1 > 0.0);
  CHECK(std::isfinite(s.y1));
  CHECK(s.y1 / s.y2 == doctest::Approx(1.0 / (pi * pi * q.lambda_m * q.lambda_m)).epsilon(1e-12));

  SystemParams direct = q;
  direct.p_a = al_transmit_power(0.9, q).p_a;
  CHECK(p_bh_kappa1_given_y(q, s.y1).value == doctest::Approx(p_bh_kappa1(direct).value).epsilon(1e-8));
  SystemParams q0 = baseline(0);
  SystemParams direct0 = q0;
  direct0.p_a = al_transmit_power(0.9, q0).p_a;
  CHECK(p_bh_kappa0_given_y(q0, success_link_params(q0, 0.9).y2).value ==
        doctest::Approx(p_bh_kappa0(direct0).value).epsilon(1e-8));
}

TEST_CASE("BH rate") {
  SystemParams a = baseline(0), b = baseline(0);
  a.gamma = 0.1;
  b.gamma = 1.0;
  b.lambda_m = 4e-6;
  CHECK(ergodic_rate_bh(a).value > ergodic_rate_bh(b).value);

  double prev = INFINITY;
  for (double pa_dbm : {-10.0, 0.0, 10.0}) {
    SystemParams q = baseline(0);
    q.p_a = dbm_to_linear(pa_dbm);
    const double v = ergodic_rate_bh(q).value;
    CHECK(v <= prev);
    prev = v;
  }

  // Tail-probability route: integrate p_bh(e^tau - 1) over tau directly.
  for (int kappa : {0, 1}) {
    SystemParams q = baseline(kappa);
    const auto ref = integrate(
        [&](double tau) {
          SystemParams t = q;
          t.theta = std::expm1(tau);
          return p_bh(t).value;
        },
        0.0, 80.0, QuadratureSpec{1e-10, 1e-9, 4000}, std::vector<double>{1, 3, 10, 30});
    CHECK(ergodic_rate_bh(q).value == doctest::Approx(ref.value).epsilon(1e-6));
  }
  SystemParams alpha = baseline(0);
  alpha.alpha_i = 3.5;
  CHECK(code_of([&] { ergodic_rate_bh(alpha); }) == ErrorCode::unsupported_exponent);
}

TEST_CASE("DL rate") {
  SystemParams p;
  p.lambda_m = 1e-9;
  const auto r = ergodic_rate_dl(p);
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 10.0);
  CHECK_FALSE(r.warnings.empty());

  SystemParams q;
  q.lambda_m = 4e-6;
  q.lambda_s = 4e-5;
  q.kappa = 1;
  double prev = 0.0;
  for (double rmu : {60.0, 200.0, 500.0}) {
    q.r_mu = rmu;
    const double v = ergodic_rate_dl(q).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("AL rate") {
  // Rayleigh reduction against its closed-form integrand.
  SystemParams p;
  p.k_factor = 0.0;
  const double omega = omega_kappa(p);
  const auto ref = integrate([&](double tau) { return std::exp(-omega * std::sqrt(std::expm1(tau))); }, 0.0, 60.0,
                             QuadratureSpec{1e-12, 1e-11, 4000}, std::vector<double>{1, 5, 10, 15, 20});
  const auto r = ergodic_rate_al(p);
  CHECK(r.value == doctest::Approx(ref.value).epsilon(1e-4));
  CHECK(r.est_error < 1e-3);

  SystemParams q;
  q.gamma = 0.0;
  CHECK(code_of([&] { ergodic_rate_al(q); }) == ErrorCode::divergent);
  SystemParams near;
  near.gamma = 1e-14;
  const auto n = ergodic_rate_al(near);
  CHECK(n.value > ergodic_rate_al(SystemParams{}).value);
  CHECK_FALSE(n.warnings.empty());
}

}
