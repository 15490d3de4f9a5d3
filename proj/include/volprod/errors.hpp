#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace volprod {

enum class ErrorKind {
  InvalidArgument,
  DegenerateInput,
  CenterNotInterior,
  OriginNotInterior,
  ZeroVector,
  NotOnBoundary,
  NonSmoothKind,
  ConvexityLost,
  TooLarge,
  NotInvariant,
  ScalingRequired,
  NonConvergence,
  DependentVectors,
  PointOutside,
  HypothesisViolated,
  NotCentrallySymmetric,
  HypothesisNotCovered,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` is the stable machine-readable part.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int detail = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Extra integer payload, e.g. the index of a violated hypothesis.
  int detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  int detail_;
};

}  // namespace volprod
