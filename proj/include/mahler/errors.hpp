#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mahler {

enum class ErrorKind {
  DegenerateInput,
  UnboundedRegion,
  EmptyRegion,
  ZeroDirection,
  OriginNotInterior,
  SingularMatrix,
  NotSymmetric,
  NotClosed,
  NotCentrallySymmetric,
  NotOnBoundary,
  NoConvergence,
  SymmetryViolation,
  CertificateInvalid,
  InvariantViolation,
  HullFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit code.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mahler
