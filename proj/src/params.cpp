#include "mobicell/params.hpp"

#include <array>
#include <cmath>

#include "mobicell/channel.hpp"
#include "mobicell/error.hpp"

namespace mobicell {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parameter: return "parameter error";
    case ErrorCode::singularity: return "singularity error";
    case ErrorCode::snapshot: return "snapshot error";
    case ErrorCode::quadrature: return "quadrature error";
    case ErrorCode::unsupported_exponent: return "unsupported exponent";
    case ErrorCode::divergent: return "divergent interference";
    case ErrorCode::infeasible: return "infeasible target";
    case ErrorCode::numerical: return "numerical error";
  }
  return "unknown error";
}

namespace {

[[noreturn]] void bad(std::string_view field, std::string_view why) {
  throw Error(ErrorCode::parameter,
              std::string(field) + ": " + std::string(why));
}

constexpr std::array kFields{
    ParamField{"p_m", "dBm", true},
    ParamField{"p_s", "dBm", false},
    ParamField{"p_a", "dBm", true},
    ParamField{"lambda_m", "1/m^2", true},
    ParamField{"lambda_s", "1/m^2", false},
    ParamField{"alpha_i", "", false},
    ParamField{"alpha_o", "", false},
    ParamField{"epsilon", "", true},
    ParamField{"gamma", "", true},
    ParamField{"kappa", "", true},
    ParamField{"theta_db", "dB", true},
    ParamField{"theta", "", false},
    ParamField{"k_factor_db", "dB", false},
    ParamField{"k_factor", "", false},
    ParamField{"r_am", "m", false},
    ParamField{"r_av_max", "m", false},
    ParamField{"j_max", "", false},
    ParamField{"q_max", "", false},
    ParamField{"r_u", "m", false},
    ParamField{"r_mu", "m", false},
    ParamField{"n_cues", "", false},
    ParamField{"mue_at_max", "", false},
};

int as_int(std::string_view name, double value) {
  if (!std::isfinite(value) || std::nearbyint(value) != value)
    bad(name, "must be an integer");
  return static_cast<int>(value);
}

}  // namespace

void validate(const SystemParams& p) {
  auto positive = [](std::string_view n, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) bad(n, "must be finite and > 0");
  };
  positive("p_m", p.p_m.linear_mw);
  positive("p_s", p.p_s.linear_mw);
  positive("p_a", p.p_a.linear_mw);
  positive("lambda_m", p.lambda_m);
  if (!(p.lambda_s >= 0.0) || !std::isfinite(p.lambda_s))
    bad("lambda_s", "must be finite and >= 0");
  if (!(p.alpha_i > 2.0)) bad("alpha_i", "must be > 2");
  if (!(p.alpha_o > 2.0)) bad("alpha_o", "must be > 2");
  if (!(p.epsilon > 0.0 && p.epsilon <= 1.0)) bad("epsilon", "must lie in (0, 1]");
  if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) bad("gamma", "must lie in [0, 1]");
  if (p.kappa != 0 && p.kappa != 1) bad("kappa", "must be 0 or 1");
  positive("theta", p.theta);
  if (!(p.k_factor >= 0.0) || !std::isfinite(p.k_factor))
    bad("k_factor", "must be finite and >= 0");
  positive("r_am", p.r_am);
  positive("r_av_max", p.r_av_max);
  if (p.j_max < 1) bad("j_max", "must be >= 1");
  if (p.q_max < 1) bad("q_max", "must be >= 1");
  positive("r_u", p.r_u);
  positive("r_mu", p.r_mu);
  if (p.n_cues < 0) bad("n_cues", "must be >= 0");
}

std::span<const ParamField> param_fields() { return kFields; }

bool has_param_field(std::string_view name) {
  for (const auto& f : kFields)
    if (f.name == name) return true;
  return false;
}

void set_param(SystemParams& p, std::string_view name, double v) {
  if (name == "p_m") p.p_m = dbm_to_linear(v);
  else if (name == "p_s") p.p_s = dbm_to_linear(v);
  else if (name == "p_a") p.p_a = dbm_to_linear(v);
  else if (name == "lambda_m") p.lambda_m = v;
  else if (name == "lambda_s") p.lambda_s = v;
  else if (name == "alpha_i") p.alpha_i = v;
  else if (name == "alpha_o") p.alpha_o = v;
  else if (name == "epsilon") p.epsilon = v;
  else if (name == "gamma") p.gamma = v;
  else if (name == "kappa") p.kappa = as_int(name, v);
  else if (name == "theta_db") p.theta = db_to_linear(v);
  else if (name == "theta") p.theta = v;
  else if (name == "k_factor_db") p.k_factor = db_to_linear(v);
  else if (name == "k_factor") p.k_factor = v;
  else if (name == "r_am") p.r_am = v;
  else if (name == "r_av_max") p.r_av_max = v;
  else if (name == "j_max") p.j_max = as_int(name, v);
  else if (name == "q_max") p.q_max = as_int(name, v);
  else if (name == "r_u") p.r_u = v;
  else if (name == "r_mu") p.r_mu = v;
  else if (name == "n_cues") p.n_cues = as_int(name, v);
  else if (name == "mue_at_max")
    p.mue_placement = as_int(name, v) != 0 ? MuePlacement::at_max : MuePlacement::uniform;
  else throw Error(ErrorCode::parameter, "unknown parameter '" + std::string(name) + "'");
}

double get_param(const SystemParams& p, std::string_view name) {
  if (name == "p_m") return linear_to_dbm(p.p_m);
  if (name == "p_s") return linear_to_dbm(p.p_s);
  if (name == "p_a") return linear_to_dbm(p.p_a);
  if (name == "lambda_m") return p.lambda_m;
  if (name == "lambda_s") return p.lambda_s;
  if (name == "alpha_i") return p.alpha_i;
  if (name == "alpha_o") return p.alpha_o;
  if (name == "epsilon") return p.epsilon;
  if (name == "gamma") return p.gamma;
  if (name == "kappa") return p.kappa;
  if (name == "theta_db") return linear_to_db(p.theta);
  if (name == "theta") return p.theta;
  if (name == "k_factor_db") return linear_to_db(p.k_factor);
  if (name == "k_factor") return p.k_factor;
  if (name == "r_am") return p.r_am;
  if (name == "r_av_max") return p.r_av_max;
  if (name == "j_max") return p.j_max;
  if (name == "q_max") return p.q_max;
  if (name == "r_u") return p.r_u;
  if (name == "r_mu") return p.r_mu;
  if (name == "n_cues") return p.n_cues;
  if (name == "mue_at_max") return p.mue_placement == MuePlacement::at_max ? 1.0 : 0.0;
  throw Error(ErrorCode::parameter, "unknown parameter '" + std::string(name) + "'");
}

}  // namespace mobicell
