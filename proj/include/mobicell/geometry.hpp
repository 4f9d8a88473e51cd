#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mobicell/channel.hpp"
#include "mobicell/params.hpp"

namespace mobicell {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(Point2D a, Point2D b);

/// Axis-aligned rectangle in meters.
struct Window {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  static Window centered(double width_m, double height_m);

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  Point2D center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
  bool contains(Point2D p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  friend bool operator==(const Window&, const Window&) = default;
};

struct PppField {
  double density = 0.0;
  Window window;
  std::vector<Point2D> points;

  friend bool operator==(const PppField&, const PppField&) = default;
};

/// Homogeneous PPP on `window`: Poisson(density * area) points, i.i.d. uniform.
PppField sample_ppp(double density, const Window& window, Rng& rng);

/// Nearest-neighbour distance law 2 pi lambda d exp(-lambda pi d^2).
double nearest_distance_pdf(double d, double density);
double nearest_distance_cdf(double d, double density);

/// Inverse-CDF map: u in (0, 1] -> sqrt(-ln(u) / (pi lambda)).
double nearest_distance_from_uniform(double u, double density);
double sample_nearest_distance(double density, Rng& rng);

/// Index of the point closest to `target`; ties go to the lowest index.
std::size_t nearest_index(std::span<const Point2D> points, Point2D target);

struct NetworkSnapshot {
  PppField menbs;
  PppField senbs;  // empty when kappa == 0 or lambda_s == 0
  Point2D mc_position;
  std::size_t amenb_index = 0;
  std::vector<Point2D> cues;  // cues[0] is placed at r_u from the A-MeNB
  double mue_offset = 0.0;
  double r_am = 0.0;
  double r_m = 0.0;            // MC to A-MeNB
  double r_mu_realized = 0.0;  // MC to cues[0]
  bool cue_constraint_met = false;
  int attempts = 1;

  Point2D amenb() const { return menbs.points[amenb_index]; }

  friend bool operator==(const NetworkSnapshot&, const NetworkSnapshot&) = default;
};

using FieldSampler = std::function<PppField(double, const Window&, Rng&)>;

inline constexpr int kSnapshotRetryCap = 8;

/// Samples one realization with the MC at the window center. An empty MeNB
/// field is resampled up to kSnapshotRetryCap times, then Error(snapshot).
/// `sampler` replaces sample_ppp, which lets tests inject empty fields.
NetworkSnapshot build_snapshot(const SystemParams& params, const Window& window, Rng& rng,
                               const FieldSampler& sampler = {});

}  // namespace mobicell
