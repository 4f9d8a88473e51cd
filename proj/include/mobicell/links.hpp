#pragma once

#include <cstddef>

#include "mobicell/geometry.hpp"
#include "mobicell/params.hpp"

namespace mobicell {

enum class LinkKind { backhaul, cellular_dl, access_link };

/// One SIR evaluation with its interference decomposition (all in mW).
/// i_m: MeNBs other than the A-MeNB for BH/DL, every MeNB for the AL.
/// i_s: SeNBs, before the kappa factor. i_a: the AL-antenna term
/// (I_a for BH, I'_a for DL) before the gamma/epsilon factors.
struct LinkSample {
  LinkKind link = LinkKind::backhaul;
  double signal = 0.0;
  double i_m = 0.0;
  double i_s = 0.0;
  double i_a = 0.0;
  double interference = 0.0;  // denominator actually used
  double sir = 0.0;           // +inf when interference == 0
  int floored_distances = 0;  // interferers closer than kMinInterfererDistance

  bool infinite() const;
  bool success(double theta) const { return sir > theta; }
};

inline constexpr double kMinInterfererDistance = 0.1;  // meters

// Fading is drawn for every interferer regardless of kappa, gamma and
// epsilon, in a fixed order, so the same RNG state gives pathwise-comparable
// samples across those parameters.

LinkSample sir_backhaul(const NetworkSnapshot& snap, const SystemParams& params, Rng& rng);

/// Downlink to cues[cue_index]. With `al_shares` false the MC's AL is not on
/// the sub-channel and I'_a is left out of the denominator.
LinkSample sir_cellular_dl(const NetworkSnapshot& snap, const SystemParams& params, Rng& rng,
                           std::size_t cue_index = 0, bool al_shares = true);

LinkSample sir_access_link(const NetworkSnapshot& snap, const SystemParams& params, Rng& rng);

}  // namespace mobicell
