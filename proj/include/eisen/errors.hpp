#pragma once

#include <stdexcept>
#include <string>

namespace eisen {

enum class ErrorKind {
  domain,
  pole,
  pole_proximity,
  precision,
  range,
  convergence,
  division,
  resource,
  iteration,
  quadrature,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every numerical failure raised by the library. The kind tag is what
/// the command line layer serializes into its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define EISEN_DEFINE_ERROR(Name, Kind)                                     \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

EISEN_DEFINE_ERROR(DomainError, domain)
EISEN_DEFINE_ERROR(PoleError, pole)
EISEN_DEFINE_ERROR(PoleProximityError, pole_proximity)
EISEN_DEFINE_ERROR(PrecisionError, precision)
EISEN_DEFINE_ERROR(RangeError, range)
EISEN_DEFINE_ERROR(ConvergenceError, convergence)
EISEN_DEFINE_ERROR(DivisionError, division)
EISEN_DEFINE_ERROR(ResourceError, resource)
EISEN_DEFINE_ERROR(IterationError, iteration)
EISEN_DEFINE_ERROR(QuadratureError, quadrature)

#undef EISEN_DEFINE_ERROR

}  // namespace eisen
