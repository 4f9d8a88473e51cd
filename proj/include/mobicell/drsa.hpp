#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mobicell/geometry.hpp"

namespace mobicell {

enum class SharingMode { share_with_backhaul, share_with_cue, exclusive_al };

const char* to_string(SharingMode mode) noexcept;

struct CueDistances {
  double r_u = 0.0;   // CUE to A-MeNB
  double r_mu = 0.0;  // CUE to MC
};

struct Assignment {
  SharingMode mode = SharingMode::exclusive_al;
  std::optional<std::size_t> cue_index;  // set for share_with_cue only
  std::optional<double> chosen_ratio;    // min r_u / r_mu over the candidates
};

/// Picks the CUE minimizing r_u / r_mu; shares only when that minimum is < 1.
/// Ties go to the lowest index. An empty list yields exclusive_al.
Assignment select_cue(std::span<const CueDistances> cues);

/// Backhaul demand wins the sub-channel; otherwise delegates to select_cue.
Assignment assign_subchannel(bool backhaul_has_data, std::span<const CueDistances> cues);

std::vector<CueDistances> cue_distances(const NetworkSnapshot& snap);

struct ReuseReport {
  int q_omega = 2;
  int active_senb_count = 0;
  double area_bound = 0.0;  // m^2
};

/// Q = max(2, 2 + number of active small cells). Flags must be 0 or 1.
ReuseReport reuse_factor(std::span<const int> senb_active_flags, double area_bound = 0.0);

}  // namespace mobicell
