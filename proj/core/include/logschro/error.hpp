#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logschro {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  UnknownVertex,
  InvalidGraph,
  NotAdmissible,
  NotInNehariSet,
  SingleSigned,
  DegenerateCoupling,
  NoBracket,
  NonConvergence,
  InfeasibleWell,
  DofLimitExceeded,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace logschro
