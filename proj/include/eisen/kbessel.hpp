#pragma once

// Modified Bessel function K_nu(u) for complex order nu = sigma + i t and
// real argument u > 0.
//
// Every value is carried with the factor e^{pi t / 2}, which cancels the
// exponential decay of K_{it} in t. Tolerances passed to these routines are
// relative to the scaled value.

#include "eisen/types.hpp"

#include <functional>

namespace eisen {

enum class Regime { oscillatory, transition, decay };

std::string_view to_string(Regime r) noexcept;

inline constexpr double kBesselMaxSigma = 2.0;
inline constexpr double kBesselMaxT = 2000.0;

/// Order nu with Im nu >= 0; K_{-nu} = K_nu is applied on construction.
/// For real orders sigma >= 0 is enforced the same way.
class BesselOrder {
 public:
  BesselOrder(double sigma, double t);
  explicit BesselOrder(cplx nu) : BesselOrder(nu.real(), nu.imag()) {}

  double sigma() const noexcept { return sigma_; }
  double t() const noexcept { return t_; }
  cplx nu() const noexcept { return {sigma_, t_}; }

 private:
  double sigma_;
  double t_;
};

struct BesselValue {
  cplx scaled_value;       // e^{pi t/2} K_nu(u)
  double log_scale = 0.0;  // pi t / 2
  double abs_err = 0.0;
  Regime regime = Regime::oscillatory;
  Method method = Method::series;
};

using BesselProvider = std::function<BesselValue(const BesselOrder&, double u, double tol)>;

/// Transition-width split: |u - t| <= C t^{1/3} is the transition regime.
Regime classify_regime(double t, double u, double C = 3.0);

/// Power series through I_{+-nu}, with digit escalation 16 -> 500 when the
/// terms cancel. Integer real orders use the logarithmic series.
BesselValue k_series(const BesselOrder& nu, double u, double tol, int start_digits = 16);

/// K_nu(u) = (1/2) int exp(-u cosh v + nu v) dv on a constant-phase contour.
BesselValue k_quadrature(const BesselOrder& nu, double u, double tol);

/// Mellin-Barnes integral on Re w = delta (default |sigma| + 1).
BesselValue k_mellin_barnes(const BesselOrder& nu, double u, double tol, double delta = -1.0);

/// Largest u at which k_bessel still uses the series.
double series_band_max(double t);
/// Smallest u at which k_bessel uses the quadrature.
double quadrature_band_min(double t);

/// Dispatcher: series below series_band_max, quadrature above
/// quadrature_band_min; where both apply the series value is returned and the
/// discrepancy is added to abs_err. A quadrature ConvergenceError above the
/// band falls back to the series before it propagates.
BesselValue k_bessel(const BesselOrder& nu, double u, double tol);

/// The default provider: k_bessel.
BesselProvider default_bessel_provider();

struct EnvelopeConstants {
  double C = 3.0;
  double c = 0.14;  // calibrated: largest value dominating t in {20, 50, 100}, |u - t| <= 12 t^{1/3}
};

struct Envelope {
  double value;
  Regime regime;
};

/// Regime-wise upper envelope for cosh(pi t/2) |K_{it}(u)|, t >= 1.
Envelope balogh_envelope(double t, double u, const EnvelopeConstants& k = {});

/// cosh(pi t/2) |K_nu(u)| recovered from a scaled value.
double cosh_normalized_abs(const BesselValue& v, double t);

}  // namespace eisen
