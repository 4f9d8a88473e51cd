#include "mobicell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mobicell/error.hpp"

namespace mobicell {

using std::numbers::pi;

double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

Window Window::centered(double width_m, double height_m) {
  return {-0.5 * width_m, -0.5 * height_m, 0.5 * width_m, 0.5 * height_m};
}

PppField sample_ppp(double density, const Window& window, Rng& rng) {
  if (!(density > 0.0) || !std::isfinite(density))
    throw Error(ErrorCode::parameter, "sample_ppp: density must be > 0");
  if (!(window.width() > 0.0) || !(window.height() > 0.0))
    throw Error(ErrorCode::parameter, "sample_ppp: degenerate window");

  std::poisson_distribution<long long> count(density * window.area());
  std::uniform_real_distribution<double> ux(window.x_min, window.x_max);
  std::uniform_real_distribution<double> uy(window.y_min, window.y_max);

  PppField field{density, window, {}};
  const auto n = static_cast<std::size_t>(count(rng));
  field.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ux(rng);
    field.points.push_back({x, uy(rng)});
  }
  return field;
}

double nearest_distance_pdf(double d, double density) {
  if (d < 0.0) throw Error(ErrorCode::parameter, "nearest_distance_pdf: d must be >= 0");
  if (!(density > 0.0)) throw Error(ErrorCode::parameter, "nearest_distance_pdf: density must be > 0");
  return 2.0 * pi * density * d * std::exp(-density * pi * d * d);
}

double nearest_distance_cdf(double d, double density) {
  if (d < 0.0) throw Error(ErrorCode::parameter, "nearest_distance_cdf: d must be >= 0");
  if (!(density > 0.0)) throw Error(ErrorCode::parameter, "nearest_distance_cdf: density must be > 0");
  return -std::expm1(-density * pi * d * d);
}

double nearest_distance_from_uniform(double u, double density) {
  if (!(u > 0.0 && u <= 1.0)) throw Error(ErrorCode::parameter, "nearest distance: u must be in (0, 1]");
  if (!(density > 0.0)) throw Error(ErrorCode::parameter, "nearest distance: density must be > 0");
  return std::sqrt(-std::log(u) / (pi * density));
}

double sample_nearest_distance(double density, Rng& rng) {
  // generate_canonical is [0, 1); 1 - u maps it onto (0, 1].
  const double u = 1.0 - std::generate_canonical<double, 53>(rng);
  return nearest_distance_from_uniform(u, density);
}

std::size_t nearest_index(std::span<const Point2D> points, Point2D target) {
  std::size_t best = 0;
  double best_d2 = INFINITY;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = points[i].x - target.x;
    const double dy = points[i].y - target.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

namespace {

Point2D polar(Point2D origin, double radius, double angle) {
  return {origin.x + radius * std::cos(angle), origin.y + radius * std::sin(angle)};
}

// Places cues[0] at r_u from the A-MeNB so that its distance to the MC is r_mu
// when the triangle exists, otherwise at a uniform angle.
void place_primary_cue(NetworkSnapshot& snap, const SystemParams& params, const Window& window,
                       Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  const Point2D a = snap.amenb();
  const double r_m = snap.r_m;
  const double r_u = params.r_u;
  const double r_mu = params.r_mu;

  // Side choice is drawn unconditionally so the stream layout does not
  // depend on feasibility.
  const bool flip = std::bernoulli_distribution(0.5)(rng);
  const double fallback_angle = angle(rng);

  Point2D cue{};
  bool met = false;
  if (r_m > 0.0 && std::abs(r_m - r_u) <= r_mu && r_mu <= r_m + r_u) {
    const double cos_phi = std::clamp((r_m * r_m + r_u * r_u - r_mu * r_mu) / (2.0 * r_m * r_u), -1.0, 1.0);
    const double phi = std::acos(cos_phi);
    const double base = std::atan2(snap.mc_position.y - a.y, snap.mc_position.x - a.x);
    cue = polar(a, r_u, flip ? base - phi : base + phi);
    if (!window.contains(cue)) cue = polar(a, r_u, flip ? base + phi : base - phi);
    met = window.contains(cue);
  }
  if (!met) {
    cue = polar(a, r_u, fallback_angle);
    for (int tries = 0; !window.contains(cue) && tries < 64; ++tries) cue = polar(a, r_u, angle(rng));
    if (!window.contains(cue))
      throw Error(ErrorCode::snapshot, "build_snapshot: cannot place CUE inside the window");
  }
  snap.cues.push_back(cue);
  snap.cue_constraint_met = met;
  snap.r_mu_realized = distance(cue, snap.mc_position);
}

}  // namespace

NetworkSnapshot build_snapshot(const SystemParams& params, const Window& window, Rng& rng,
                               const FieldSampler& sampler) {
  validate(params);
  const FieldSampler& draw = sampler ? sampler : FieldSampler(sample_ppp);

  NetworkSnapshot snap;
  snap.mc_position = window.center();
  snap.r_am = params.r_am;

  int attempt = 1;
  for (;; ++attempt) {
    snap.menbs = draw(params.lambda_m, window, rng);
    if (!snap.menbs.points.empty()) break;
    if (attempt >= kSnapshotRetryCap)
      throw Error(ErrorCode::snapshot, "build_snapshot: no MeNB sampled after " +
                                           std::to_string(kSnapshotRetryCap) + " attempts");
  }
  snap.attempts = attempt;
  snap.amenb_index = nearest_index(snap.menbs.points, snap.mc_position);
  snap.r_m = distance(snap.amenb(), snap.mc_position);

  if (params.kappa == 1 && params.lambda_s > 0.0)
    snap.senbs = draw(params.lambda_s, window, rng);
  else
    snap.senbs = PppField{params.lambda_s, window, {}};

  if (params.n_cues >= 1) place_primary_cue(snap, params, window, rng);
  std::uniform_real_distribution<double> ux(window.x_min, window.x_max);
  std::uniform_real_distribution<double> uy(window.y_min, window.y_max);
  for (int i = 1; i < params.n_cues; ++i) {
    const double x = ux(rng);
    snap.cues.push_back({x, uy(rng)});
  }

  if (params.mue_placement == MuePlacement::at_max) {
    snap.mue_offset = params.r_av_max;
  } else {
    // U(0, max]: 1 - canonical is in (0, 1].
    snap.mue_offset = params.r_av_max * (1.0 - std::generate_canonical<double, 53>(rng));
  }
  return snap;
}

}  // namespace mobicell
