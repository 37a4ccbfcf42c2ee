#pragma once

#include <stdexcept>
#include <string>

namespace wstar {

enum class ErrorCode {
  InvalidArgument,
  SupportOutsideWindow,
  DimensionMismatch,
  WindowMismatch,
  SingularComponentUnsupported,
  ProjectionErrorAboveTolerance,
  QuadratureNonConvergent,
  MissingDerivative,
  VacuumFormation,
  NoConvergence,
  WaveOutsideWindow,
  NotBVRepresentable,
  OnJumpPath,
  MissingEntropyPair,
  InvalidSpec,
  ConfigError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wstar
