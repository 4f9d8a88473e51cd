#include "mobicell/drsa.hpp"

#include <algorithm>
#include <string>

#include "mobicell/error.hpp"

namespace mobicell {

const char* to_string(SharingMode mode) noexcept {
  switch (mode) {
    case SharingMode::share_with_backhaul: return "share_with_backhaul";
    case SharingMode::share_with_cue: return "share_with_cue";
    case SharingMode::exclusive_al: return "exclusive_al";
  }
  return "unknown";
}

Assignment select_cue(std::span<const CueDistances> cues) {
  Assignment out;
  if (cues.empty()) return out;

  std::size_t best = 0;
  double best_ratio = INFINITY;
  for (std::size_t i = 0; i < cues.size(); ++i) {
    if (!(cues[i].r_u > 0.0) || !(cues[i].r_mu > 0.0))
      throw Error(ErrorCode::parameter, "select_cue: distances must be > 0 (CUE " + std::to_string(i) + ")");
    const double ratio = cues[i].r_u / cues[i].r_mu;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }
  out.chosen_ratio = best_ratio;
  if (best_ratio < 1.0) {
    out.mode = SharingMode::share_with_cue;
    out.cue_index = best;
  }
  return out;
}

Assignment assign_subchannel(bool backhaul_has_data, std::span<const CueDistances> cues) {
  if (backhaul_has_data) return {SharingMode::share_with_backhaul, std::nullopt, std::nullopt};
  return select_cue(cues);
}

std::vector<CueDistances> cue_distances(const NetworkSnapshot& snap) {
  std::vector<CueDistances> out;
  out.reserve(snap.cues.size());
  const Point2D amenb = snap.amenb();
  for (const auto& c : snap.cues) out.push_back({distance(c, amenb), distance(c, snap.mc_position)});
  return out;
}

ReuseReport reuse_factor(std::span<const int> flags, double area_bound) {
  ReuseReport r;
  r.area_bound = area_bound;
  for (int f : flags) {
    if (f != 0 && f != 1) throw Error(ErrorCode::parameter, "reuse_factor: flags must be 0 or 1");
    r.active_senb_count += f;
  }
  r.q_omega = std::max(2, 2 + r.active_senb_count);
  return r;
}

}  // namespace mobicell
