#pragma once

#include <complex>
#include <string_view>

namespace eisen {

using cplx = std::complex<double>;

/// Which numerical route produced a value.
enum class Method {
  stirling,
  euler_maclaurin,
  functional_equation,
  extended_precision,
  series,
  quadrature,
  mellin_barnes,
  fourier,
  direct_sum,
  cached,
};

std::string_view to_string(Method m) noexcept;

/// A complex spectral parameter s = sigma + i t.
class SpectralPoint {
 public:
  SpectralPoint(double sigma, double t);
  explicit SpectralPoint(cplx s) : SpectralPoint(s.real(), s.imag()) {}

  double sigma() const noexcept { return sigma_; }
  double t() const noexcept { return t_; }
  cplx value() const noexcept { return {sigma_, t_}; }

 private:
  double sigma_;
  double t_;
};

/// Value returned by the scalar evaluators: the value, an absolute error
/// estimate, and the route that produced it.
struct EvalResult {
  cplx value;
  double abs_err = 0.0;
  Method method = Method::stirling;
};

}  // namespace eisen
