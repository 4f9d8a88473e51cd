#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace mobicell {

/// Transmit power in linear milliwatts.
struct PowerLevel {
  double linear_mw = 1.0;

  friend bool operator==(const PowerLevel&, const PowerLevel&) = default;
};

enum class MuePlacement {
  uniform,  // offset ~ U(0, r_av_max]
  at_max,   // offset == r_av_max, the distance the analytic AL model assumes
};

/// Every system-model knob. Internal units are linear: mW, meters, per-m²,
/// linear SIR threshold and linear Rician K.
struct SystemParams {
  PowerLevel p_m{31622.776601683792};  // 45 dBm
  PowerLevel p_s{1.9952623149688795};  // 3 dBm
  PowerLevel p_a{1.0};                 // 0 dBm
  double lambda_m = 2e-6;
  double lambda_s = 2e-5;
  double alpha_i = 4.0;
  double alpha_o = 3.5;
  double epsilon = 0.1;
  double gamma = 1.0;
  int kappa = 0;
  double theta = 0.1;                  // -10 dB
  double k_factor = 1.5848931924611136;  // 2 dB
  double r_am = 5.0;
  double r_av_max = 8.0;
  int j_max = 70;
  int q_max = 70;
  double r_u = 50.0;
  double r_mu = 100.0;
  int n_cues = 1;
  MuePlacement mue_placement = MuePlacement::uniform;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Throws Error(parameter) naming the first offending field.
void validate(const SystemParams& params);

// Named scalar access, used by sweeps, the C API and config loading.
// Powers are exchanged in dBm, theta and k_factor in dB (`*_db` names) or
// linear (bare names); everything else in internal units.
struct ParamField {
  std::string_view name;
  std::string_view unit;
  bool required;
};

std::span<const ParamField> param_fields();
bool has_param_field(std::string_view name);
void set_param(SystemParams& params, std::string_view name, double value);
double get_param(const SystemParams& params, std::string_view name);

}  // namespace mobicell
