#include <cmath>

#include "doctest.h"
#include "mobicell/analytic.hpp"
#include "mobicell/error.hpp"
#include "mobicell/geometry.hpp"
#include "mobicell/links.hpp"

using namespace mobicell;

namespace {

const Window kWindow = Window::centered(40000.0, 40000.0);

NetworkSnapshot snapshot(const SystemParams& p, std::uint64_t seed) {
  Rng rng(seed);
  return build_snapshot(p, kWindow, rng);
}

template <class F>
LinkSample with_seed(std::uint64_t seed, F&& f) {
  Rng rng(seed);
  return f(rng);
}

}  // namespace

TEST_SUITE("links") {

TEST_CASE("BH: SIC removes the AL term pathwise") {
  SystemParams p;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto snap = snapshot(p, seed);
    SystemParams ideal = p;
    ideal.gamma = 0.0;
    const auto a = with_seed(seed, [&](Rng& r) { return sir_backhaul(snap, p, r); });
    const auto b = with_seed(seed, [&](Rng& r) { return sir_backhaul(snap, ideal, r); });
    CHECK(b.interference == doctest::Approx(a.i_m).epsilon(1e-12));
    CHECK(b.sir > a.sir);
    CHECK(a.signal == b.signal);
  }
}

TEST_CASE("BH: lone MeNB with ideal SIC has infinite SIR") {
  SystemParams p;
  p.gamma = 0.0;
  NetworkSnapshot snap;
  snap.mc_position = {0, 0};
  snap.menbs.points = {{300, 0}};
  snap.r_m = 300;
  snap.r_am = p.r_am;
  Rng rng(1);
  const auto s = sir_backhaul(snap, p, rng);
  CHECK(s.infinite());
  CHECK(s.success(1e12));
}

TEST_CASE("DL: r_mu scaling of the AL term") {
  SystemParams p;
  NetworkSnapshot near;
  near.mc_position = {0, 0};
  near.menbs.points = {{60, 0}, {2000, 0}};
  near.amenb_index = 0;
  near.cues = {{60, 50}};
  NetworkSnapshot far = near;
  // Same CUE to A-MeNB distance, twice the CUE to MC distance.
  const double rmu = distance(near.cues[0], near.mc_position);
  const double ux = near.cues[0].x / rmu, uy = near.cues[0].y / rmu;
  far.mc_position = {near.cues[0].x - 2 * rmu * ux, near.cues[0].y - 2 * rmu * uy};
  const auto a = with_seed(4, [&](Rng& r) { return sir_cellular_dl(near, p, r); });
  const auto b = with_seed(4, [&](Rng& r) { return sir_cellular_dl(far, p, r); });
  CHECK(b.i_a / a.i_a == doctest::Approx(std::pow(2.0, -4.0)).epsilon(1e-9));

  // Tiny epsilon: AL term vanishes from the denominator.
  SystemParams q = p;
  q.epsilon = 1e-12;
  const auto c = with_seed(4, [&](Rng& r) { return sir_cellular_dl(near, q, r); });
  CHECK(c.interference == doctest::Approx(c.i_m).epsilon(1e-9));
  const auto d = with_seed(4, [&](Rng& r) { return sir_cellular_dl(near, p, r, 0, false); });
  CHECK(d.interference == d.i_m);
  CHECK_THROWS_AS(with_seed(4, [&](Rng& r) { return sir_cellular_dl(near, p, r, 3); }), Error);
}

TEST_CASE("AL: epsilon and K") {
  SystemParams p;
  const auto snap = snapshot(p, 9);
  SystemParams one = p, half = p;
  one.epsilon = 1.0;
  half.epsilon = 0.5;
  const auto a = with_seed(2, [&](Rng& r) { return sir_access_link(snap, one, r); });
  const auto b = with_seed(2, [&](Rng& r) { return sir_access_link(snap, half, r); });
  CHECK(b.sir / a.sir == doctest::Approx(2.0).epsilon(1e-12));

  SystemParams los = p;
  los.k_factor = 1e3;
  double sum = 0.0;
  Rng rng(5);
  for (int i = 0; i < 200; ++i) sum += sir_access_link(snap, los, rng).signal;
  const double expected = p.p_a.linear_mw * (los.k_factor + 1.0) * path_loss(snap.mue_offset, p.alpha_o);
  CHECK(sum / 200 == doctest::Approx(expected).epsilon(0.01));

  NetworkSnapshot bad = snap;
  bad.mue_offset = 0.0;
  try {
    with_seed(1, [&](Rng& r) { return sir_access_link(bad, p, r); });
    FAIL("zero MUE offset accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singularity);
  }
}

TEST_CASE("pathwise monotonicity") {
  SystemParams p;
  p.kappa = 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto snap = snapshot(p, seed);
    SystemParams no_sc = p;
    no_sc.kappa = 0;
    for (auto link : {0, 1, 2}) {
      auto eval = [&](const SystemParams& q) {
        return with_seed(seed + 100, [&](Rng& r) {
          if (link == 0) return sir_backhaul(snap, q, r);
          if (link == 1) return sir_cellular_dl(snap, q, r);
          return sir_access_link(snap, q, r);
        });
      };
      const auto with = eval(p);
      const auto without = eval(no_sc);
      CHECK(without.sir >= with.sir);
      bool prev = true;
      for (double t : {1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0}) {
        const bool now = with.success(t);
        CHECK((prev || !now));
        prev = now;
      }
    }
    double last = INFINITY;
    for (double g : {0.0, 0.1, 0.5, 1.0}) {
      SystemParams q = p;
      q.gamma = g;
      const auto s = with_seed(seed, [&](Rng& r) { return sir_backhaul(snap, q, r); });
      CHECK(s.sir <= last);
      last = s.sir;
    }
    last = INFINITY;
    for (double e : {0.1, 0.4, 0.8, 1.0}) {
      SystemParams q = p;
      q.epsilon = e;
      const auto s = with_seed(seed, [&](Rng& r) { return sir_access_link(snap, q, r); });
      CHECK(s.sir <= last);
      last = s.sir;
    }
  }
}

TEST_CASE("interferers inside the floor distance are counted") {
  SystemParams p;
  NetworkSnapshot snap;
  snap.mc_position = {0, 0};
  snap.menbs.points = {{300, 0}, {0.01, 0.0}};
  snap.r_m = 300;
  snap.r_am = p.r_am;
  Rng rng(1);
  const auto s = sir_backhaul(snap, p, rng);
  CHECK(s.floored_distances == 1);
  CHECK(std::isfinite(s.sir));
}

TEST_CASE("BH and DL success frequencies match the analytic forms") {
  // Reference densities, kappa = 0.
  SystemParams p;
  int hits = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const auto snap = snapshot(p, 1000 + i);
    Rng rng(5000 + i);
    hits += sir_backhaul(snap, p, rng).success(p.theta);
  }
  CHECK(std::abs(hits / double(n) - p_bh_kappa0(p).value) <= 0.05);

  // Denser MeNBs with small cells active.
  SystemParams q;
  q.lambda_m = 4e-6;
  q.lambda_s = 4e-5;
  q.kappa = 1;
  hits = 0;
  const int m = 1000;
  for (int i = 0; i < m; ++i) {
    const auto snap = snapshot(q, 1000 + i);
    Rng rng(5000 + i);
    hits += sir_cellular_dl(snap, q, rng).success(q.theta);
  }
  CHECK(std::abs(hits / double(m) - p_dl(q).value) <= 0.05);
}

TEST_CASE("AL success approaches 1 under strong isolation") {
  SystemParams p;
  p.epsilon = 0.1;
  p.kappa = 0;
  const int n = 10000;
  for (double theta_db : {-20.0, -10.0, 0.0}) {
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      Rng rng(i);
      const auto snap = build_snapshot(p, kWindow, rng);
      hits += sir_access_link(snap, p, rng).success(std::pow(10.0, theta_db / 10.0));
    }
    CHECK_MESSAGE(hits / double(n) > 0.99, "theta_db = " << theta_db);
  }
}

}
