#include "mobicell/links.hpp"

#include <cmath>
#include <limits>
#include <span>

#include "mobicell/channel.hpp"
#include "mobicell/error.hpp"

namespace mobicell {

bool LinkSample::infinite() const { return std::isinf(sir); }

namespace {

constexpr std::size_t kNoExclusion = std::numeric_limits<std::size_t>::max();

struct FieldSum {
  double total = 0.0;
  int floored = 0;
};

// Sum of power * max(d, d_min)^-alpha * h over `points` seen from `rx`.
FieldSum field_interference(std::span<const Point2D> points, Point2D rx, double power, double alpha,
                            std::size_t exclude, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  constexpr double min_d2 = kMinInterfererDistance * kMinInterfererDistance;
  const bool quartic = alpha == 4.0;
  FieldSum sum;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double h = exp1(rng);
    if (i == exclude) continue;
    const double dx = points[i].x - rx.x;
    const double dy = points[i].y - rx.y;
    double d2 = dx * dx + dy * dy;
    if (d2 < min_d2) {
      d2 = min_d2;
      ++sum.floored;
    }
    const double gain = quartic ? 1.0 / (d2 * d2) : std::pow(d2, -0.5 * alpha);
    sum.total += gain * h;
  }
  sum.total *= power;
  return sum;
}

double ratio(double signal, double interference) {
  return interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
}

void require_menb(const NetworkSnapshot& snap) {
  if (snap.menbs.points.empty())
    throw Error(ErrorCode::snapshot, "link evaluation needs at least one MeNB");
}

}  // namespace

LinkSample sir_backhaul(const NetworkSnapshot& snap, const SystemParams& params, Rng& rng) {
  require_menb(snap);
  LinkSample s;
  s.link = LinkKind::backhaul;
  const auto im = field_interference(snap.menbs.points, snap.mc_position, params.p_m.linear_mw,
                                     params.alpha_i, snap.amenb_index, rng);
  const auto is = field_interference(snap.senbs.points, snap.mc_position, params.p_s.linear_mw,
                                     params.alpha_i, kNoExclusion, rng);
  const double h_al = sample_rayleigh_power(rng).value;
  const double h = sample_rayleigh_power(rng).value;

  s.i_m = im.total;
  s.i_s = is.total;
  s.i_a = params.p_a.linear_mw * path_loss(snap.r_am, params.alpha_i) * h_al;
  s.signal = params.p_m.linear_mw * path_loss(snap.r_m, params.alpha_i) * h;
  s.interference = s.i_m + params.kappa * s.i_s + s.i_a * params.gamma * params.epsilon;
  s.floored_distances = im.floored + is.floored;
  s.sir = ratio(s.signal, s.interference);
  return s;
}

LinkSample sir_cellular_dl(const NetworkSnapshot& snap, const SystemParams& params, Rng& rng,
                           std::size_t cue_index, bool al_shares) {
  require_menb(snap);
  if (cue_index >= snap.cues.size())
    throw Error(ErrorCode::parameter, "sir_cellular_dl: CUE index out of range");
  const Point2D cue = snap.cues[cue_index];
  LinkSample s;
  s.link = LinkKind::cellular_dl;
  const auto im = field_interference(snap.menbs.points, cue, params.p_m.linear_mw, params.alpha_i,
                                     snap.amenb_index, rng);
  const auto is =
      field_interference(snap.senbs.points, cue, params.p_s.linear_mw, params.alpha_i, kNoExclusion, rng);
  const double h_al = sample_rayleigh_power(rng).value;
  const double h = sample_rayleigh_power(rng).value;

  const double r_u = distance(cue, snap.amenb());
  const double r_mu = distance(cue, snap.mc_position);
  s.i_m = im.total;
  s.i_s = is.total;
  s.i_a = params.p_a.linear_mw * h_al * path_loss(r_mu, params.alpha_i);
  s.signal = params.p_m.linear_mw * path_loss(r_u, params.alpha_i) * h;
  s.interference = s.i_m + params.kappa * s.i_s + (al_shares ? s.i_a * params.epsilon : 0.0);
  s.floored_distances = im.floored + is.floored;
  s.sir = ratio(s.signal, s.interference);
  return s;
}

LinkSample sir_access_link(const NetworkSnapshot& snap, const SystemParams& params, Rng& rng) {
  if (!(snap.mue_offset > 0.0))
    throw Error(ErrorCode::singularity, "sir_access_link: MUE offset must be > 0");
  LinkSample s;
  s.link = LinkKind::access_link;
  const auto im = field_interference(snap.menbs.points, snap.mc_position, params.p_m.linear_mw,
                                     params.alpha_i, kNoExclusion, rng);
  const auto is = field_interference(snap.senbs.points, snap.mc_position, params.p_s.linear_mw,
                                     params.alpha_i, kNoExclusion, rng);
  const double h = sample_rician_power(params.k_factor, rng).value;

  s.i_m = im.total;
  s.i_s = is.total;
  s.signal = params.p_a.linear_mw * path_loss(snap.mue_offset, params.alpha_o) * h;
  s.interference = (s.i_m + params.kappa * s.i_s) * params.epsilon;
  s.floored_distances = im.floored + is.floored;
  s.sir = ratio(s.signal, s.interference);
  return s;
}

}  // namespace mobicell
