#include "eisen/errors.hpp"
#include "eisen/types.hpp"

#include <cmath>

namespace eisen {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::pole: return "PoleError";
    case ErrorKind::pole_proximity: return "PoleProximityError";
    case ErrorKind::precision: return "PrecisionError";
    case ErrorKind::range: return "RangeError";
    case ErrorKind::convergence: return "ConvergenceError";
    case ErrorKind::division: return "DivisionError";
    case ErrorKind::resource: return "ResourceError";
    case ErrorKind::iteration: return "IterationError";
    case ErrorKind::quadrature: return "QuadratureError";
  }
  return "Error";
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::stirling: return "stirling";
    case Method::euler_maclaurin: return "euler_maclaurin";
    case Method::functional_equation: return "functional_equation";
    case Method::extended_precision: return "extended_precision";
    case Method::series: return "series";
    case Method::quadrature: return "quadrature";
    case Method::mellin_barnes: return "mellin_barnes";
    case Method::fourier: return "fourier";
    case Method::direct_sum: return "direct_sum";
    case Method::cached: return "cached";
  }
  return "unknown";
}

SpectralPoint::SpectralPoint(double sigma, double t) : sigma_(sigma), t_(t) {
  if (!std::isfinite(sigma) || !std::isfinite(t))
    throw DomainError("spectral parameter must be finite");
}

}  // namespace eisen
