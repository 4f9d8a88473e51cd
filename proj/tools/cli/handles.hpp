#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "mobicell/mobicell.h"

namespace cli {

struct ParamsDeleter {
  void operator()(mcell_params* p) const { mcell_params_destroy(p); }
};
struct ExperimentDeleter {
  void operator()(mcell_experiment* e) const { mcell_experiment_destroy(e); }
};
struct ResultsDeleter {
  void operator()(mcell_results* r) const { mcell_results_destroy(r); }
};
struct SweepDeleter {
  void operator()(mcell_sweep* s) const { mcell_sweep_destroy(s); }
};

using Params = std::unique_ptr<mcell_params, ParamsDeleter>;
using Experiment = std::unique_ptr<mcell_experiment, ExperimentDeleter>;
using Results = std::unique_ptr<mcell_results, ResultsDeleter>;
using Sweep = std::unique_ptr<mcell_sweep, SweepDeleter>;

/// Bad or missing configuration: exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hard failure while computing: exit code 3.
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string status_message(mcell_status s) {
  return std::string(mcell_status_string(s)) + ": " + mcell_last_error();
}

/// Parameter-class failures are configuration errors; the rest are numerical.
inline void check(mcell_status s) {
  if (s == MCELL_OK) return;
  if (s == MCELL_ERR_PARAMETER || s == MCELL_ERR_UNSUPPORTED_EXPONENT)
    throw ConfigError(status_message(s));
  throw RunError(status_message(s));
}

inline Params clone(const mcell_params* p) {
  mcell_params* out = nullptr;
  check(mcell_params_clone(p, &out));
  return Params(out);
}

}  // namespace cli
