#include "gsobolev/error.hpp"

namespace gsobolev {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorKind::MassNotNormalized: return "MassNotNormalized";
    case ErrorKind::NegativeMass: return "NegativeMass";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::RootMismatch: return "RootMismatch";
    case ErrorKind::InvalidBandwidth: return "InvalidBandwidth";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::InfeasibleMass: return "InfeasibleMass";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::EmptyCloud: return "EmptyCloud";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gsobolev
