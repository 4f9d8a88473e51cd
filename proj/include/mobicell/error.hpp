#pragma once

#include <stdexcept>
#include <string>

namespace mobicell {

enum class ErrorCode {
  parameter,
  singularity,
  snapshot,
  quadrature,
  unsupported_exponent,
  divergent,
  infeasible,
  numerical,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mobicell
