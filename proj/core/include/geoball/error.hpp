#pragma once

#include <stdexcept>
#include <string>

namespace geoball {

enum class ErrorKind {
  kOutOfDomain,
  kSingularMetric,
  kDerivativeOrder,
  kChartExit,
  kConjugatePoint,
  kStepFailure,
  kQuadrature,
  kIllConditioned,
  kNotCovering,
};

const char* to_string(ErrorKind kind);

// Numerical failure inside a geometric computation. Precondition violations
// on plain parameters (negative radii and the like) use std::invalid_argument.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace geoball
