#pragma once

// The amplifier A_N(t, r) = sum_n w(n/N) tau_{it}(n) tau_{ir}(n) for a fixed
// bump weight w on [1, 2], together with its residue prediction.

#include "eisen/arithmetic.hpp"
#include "eisen/types.hpp"

#include <functional>
#include <string_view>

namespace eisen {

struct WeightFunction {
  double lo = 1.0, hi = 2.0;  // support
  std::function<double(double)> evaluate;
  double integral_w = 0.0;  // the Mellin transform at 1
};

/// w(x) = exp(-1 / ((x - 1)(2 - x))) on (1, 2), zero elsewhere.
WeightFunction bump_weight();

/// Mellin transform int_0^inf w(x) x^{s-1} dx of the bump weight.
cplx mellin_w(const SpectralPoint& s);
cplx mellin_w(const WeightFunction& w, cplx s);
/// Its derivative in s: int w(x) x^{s-1} log x dx.
cplx mellin_w_derivative(const WeightFunction& w, cplx s);

/// Direct sum over N < n < 2N. Builds a sieve unless one covering 2N is given;
/// ResourceError when 2N exceeds kMaxSieveLimit.
cplx amplifier_direct(double N, double t, double r);
cplx amplifier_direct(double N, double t, double r, const SpfTable& table);

enum class AmplifierVariant {
  exact,             // all four residues, eta = r - t != 0
  limit,             // the eta -> 0 limit of the exact residues, at t
  main_numerator,    // N w(1) log N |zeta(1 + 2it)|^2 / zeta(2)
  main_denominator,  // N w(1) log N / (zeta(2) |zeta(1 + 2it)|^2)
};

std::string_view to_string(AmplifierVariant v) noexcept;

/// Residue prediction. The exact variant throws PoleProximityError for
/// |r - t| < 1e-10; use the limit variant there.
cplx amplifier_predicted(double N, double t, double r, AmplifierVariant variant);

struct AmplifierReport {
  double N = 0, t = 0, r = 0;
  double eta = 0;  // r - t
  cplx direct;
  cplx predicted_main;              // numerator placement of |zeta(1 + 2it)|^2
  cplx predicted_with_corrections;  // exact, or limit when eta vanishes
  double variant_ratio_numerator = 0;    // |direct / main_numerator|
  double variant_ratio_denominator = 0;  // |direct / main_denominator|
  AmplifierVariant selected = AmplifierVariant::main_numerator;
  bool selected_tracks = false;  // selected ratio within 30% of 1
};

/// Bundles the direct sum with every prediction; the selected main-term
/// variant is the one whose ratio is closer to 1 on a log scale.
AmplifierReport amplifier_report(double N, double t, double r);
AmplifierReport amplifier_report(double N, double t, double r, const SpfTable& table);

}  // namespace eisen
