#include "wstar/error.hpp"

namespace wstar {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SupportOutsideWindow: return "SupportOutsideWindow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::SingularComponentUnsupported: return "SingularComponentUnsupported";
    case ErrorCode::ProjectionErrorAboveTolerance: return "ProjectionErrorAboveTolerance";
    case ErrorCode::QuadratureNonConvergent: return "QuadratureNonConvergent";
    case ErrorCode::MissingDerivative: return "MissingDerivative";
    case ErrorCode::VacuumFormation: return "VacuumFormation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::WaveOutsideWindow: return "WaveOutsideWindow";
    case ErrorCode::NotBVRepresentable: return "NotBVRepresentable";
    case ErrorCode::OnJumpPath: return "OnJumpPath";
    case ErrorCode::MissingEntropyPair: return "MissingEntropyPair";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace wstar
