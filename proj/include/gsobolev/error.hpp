#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsobolev {

enum class ErrorKind {
  ParseError,
  NonPositiveWeight,
  Disconnected,
  DuplicateEdge,
  NodeOutOfRange,
  MassNotNormalized,
  NegativeMass,
  InvalidExponent,
  RootMismatch,
  InvalidBandwidth,
  NonConvergence,
  NonPositiveEntry,
  InfeasibleMass,
  SizeLimitExceeded,
  EmptyCloud,
  SupportTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gsobolev
