#include "eisen/amplifier.hpp"

#include "eisen/errors.hpp"
#include "eisen/gamma_zeta.hpp"
#include "eisen/quadrature.hpp"

#include <cmath>
#include <string>

namespace eisen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kEtaGuard = 1e-10;

double bump(double x) {
  if (!(x > 1.0 && x < 2.0)) return 0.0;
  return std::exp(-1.0 / ((x - 1.0) * (2.0 - x)));
}

// Panels scale with the oscillation x^{i Im s} over [1, 2].
int mellin_panels(cplx s) { return 64 + static_cast<int>(std::ceil(std::abs(s.imag()) / 2)); }

cplx mellin_impl(const WeightFunction& w, cplx s, bool with_log) {
  const cplx sm1 = s - 1.0;
  ComplexIntegrand f = [&](double x) -> cplx {
    double wx = w.evaluate(x);
    if (wx == 0.0) return 0.0;
    double lx = std::log(x);
    cplx v = wx * std::exp(sm1 * lx);
    return with_log ? v * lx : v;
  };
  return gauss_legendre_composite(f, w.lo, w.hi, mellin_panels(s));
}

const WeightFunction& default_weight() {
  static const WeightFunction w = bump_weight();
  return w;
}

double zeta2() { return kPi * kPi / 6; }

// G(0) = N w(1) |zeta(1 + 2it)|^2 / zeta(2), the common main-term factor.
double main_factor(double N, double t) {
  double z = std::abs(zeta_value(cplx(1.0, 2 * t)));
  return N * default_weight().integral_w * z * z / zeta2();
}

// Residues at s = 1 +- i(t + r), which carry w(1 +- i(t + r)).
cplx far_residues(double N, double t, double r) {
  const cplx i(0.0, 1.0);
  const double u = t + r;
  if (std::abs(u) < kEtaGuard) throw PoleProximityError("amplifier residues: t + r too close to 0");
  cplx s = 1.0 + i * u;
  cplx r3 = std::exp(s * std::log(N)) * mellin_w(default_weight(), s) * zeta_value(1.0 + 2.0 * i * u) *
            zeta_value(cplx(1.0, 2 * t)) * zeta_value(cplx(1.0, 2 * r)) / zeta_value(2.0 * s);
  return 2.0 * r3.real();  // the residue at 1 - i(t + r) is the conjugate
}

cplx exact_residues(double N, double t, double r) {
  const double eta = r - t;
  if (std::abs(eta) < kEtaGuard)
    throw PoleProximityError("amplifier residues: |r - t| below 1e-10, use the limit form");
  const cplx i(0.0, 1.0);
  cplx s = 1.0 + i * eta;
  cplx r1 = std::exp(s * std::log(N)) * mellin_w(default_weight(), s) * zeta_value(cplx(1.0, 2 * r)) *
            zeta_value(1.0 + 2.0 * i * eta) * zeta_value(cplx(1.0, -2 * t)) / zeta_value(2.0 * s);
  // the residue at 1 - i eta is the conjugate
  return 2.0 * r1.real() + far_residues(N, t, r);
}

cplx limit_residues(double N, double t) {
  const WeightFunction& w = default_weight();
  const cplx one(1.0, 0.0);
  const cplx at = cplx(1.0, 2 * t);
  double log_w = (mellin_w_derivative(w, one) / w.integral_w).real();
  double log_zeta = (zeta_derivative(at) / zeta_value(at)).real();
  double log_zeta2 = (zeta_derivative(cplx(2.0, 0.0)) / zeta2()).real();
  double g0 = main_factor(N, t);
  double bracket = std::log(N) + log_w + 2 * log_zeta - 2 * log_zeta2 + 2 * kEulerGamma;
  return g0 * bracket + far_residues(N, t, t);
}

}  // namespace

WeightFunction bump_weight() {
  WeightFunction w;
  w.lo = 1.0;
  w.hi = 2.0;
  w.evaluate = bump;
  w.integral_w = gauss_legendre_composite(RealIntegrand(bump), 1.0, 2.0, 64);
  return w;
}

cplx mellin_w(const WeightFunction& w, cplx s) { return mellin_impl(w, s, false); }

cplx mellin_w(const SpectralPoint& s) { return mellin_w(default_weight(), s.value()); }

cplx mellin_w_derivative(const WeightFunction& w, cplx s) { return mellin_impl(w, s, true); }

cplx amplifier_direct(double N, double t, double r, const SpfTable& table) {
  if (!(N >= 10.0) || !std::isfinite(N)) throw DomainError("amplifier length must be at least 10");
  const double top = 2 * N;
  if (top > double(table.limit()))
    throw ResourceError("amplifier needs a sieve up to " + std::to_string(static_cast<long long>(std::ceil(top))));
  const auto lo = static_cast<std::uint64_t>(std::floor(N)) + 1;
  const auto hi = static_cast<std::uint64_t>(std::ceil(top)) - 1;
  // Neumaier summation in a fixed order
  long double sum = 0, comp = 0;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    double wn = bump(double(n) / N);
    if (wn == 0.0) continue;
    FactoredInteger f = table.factor(n);
    long double x = static_cast<long double>(wn) * tau_it(f, t, table) * tau_it(f, r, table);
    long double s2 = sum + x;
    comp += std::fabs(sum) >= std::fabs(x) ? (sum - s2) + x : (x - s2) + sum;
    sum = s2;
  }
  return static_cast<double>(sum + comp);
}

cplx amplifier_direct(double N, double t, double r) {
  if (!(N >= 10.0) || !std::isfinite(N)) throw DomainError("amplifier length must be at least 10");
  const double top = std::ceil(2 * N);
  if (top > double(kMaxSieveLimit))
    throw ResourceError("amplifier needs a sieve beyond " + std::to_string(kMaxSieveLimit));
  SpfTable table(static_cast<std::uint64_t>(top));
  return amplifier_direct(N, t, r, table);
}

std::string_view to_string(AmplifierVariant v) noexcept {
  switch (v) {
    case AmplifierVariant::exact: return "exact";
    case AmplifierVariant::limit: return "limit";
    case AmplifierVariant::main_numerator: return "main_numerator";
    case AmplifierVariant::main_denominator: return "main_denominator";
  }
  return "unknown";
}

cplx amplifier_predicted(double N, double t, double r, AmplifierVariant variant) {
  if (!(N >= 10.0)) throw DomainError("amplifier length must be at least 10");
  switch (variant) {
    case AmplifierVariant::exact: return exact_residues(N, t, r);
    case AmplifierVariant::limit: return limit_residues(N, t);
    case AmplifierVariant::main_numerator: return main_factor(N, t) * std::log(N);
    case AmplifierVariant::main_denominator: {
      double z = std::abs(zeta_value(cplx(1.0, 2 * t)));
      return N * default_weight().integral_w * std::log(N) / (zeta2() * z * z);
    }
  }
  throw DomainError("unknown amplifier variant");
}

AmplifierReport amplifier_report(double N, double t, double r, const SpfTable& table) {
  AmplifierReport rep;
  rep.N = N;
  rep.t = t;
  rep.r = r;
  rep.eta = r - t;
  rep.direct = amplifier_direct(N, t, r, table);
  rep.predicted_main = amplifier_predicted(N, t, r, AmplifierVariant::main_numerator);
  rep.predicted_with_corrections = std::abs(rep.eta) < kEtaGuard
                                       ? amplifier_predicted(N, t, r, AmplifierVariant::limit)
                                       : amplifier_predicted(N, t, r, AmplifierVariant::exact);
  rep.variant_ratio_numerator = std::abs(rep.direct / rep.predicted_main);
  rep.variant_ratio_denominator =
      std::abs(rep.direct / amplifier_predicted(N, t, r, AmplifierVariant::main_denominator));
  const bool numerator =
      std::abs(std::log(rep.variant_ratio_numerator)) <= std::abs(std::log(rep.variant_ratio_denominator));
  rep.selected = numerator ? AmplifierVariant::main_numerator : AmplifierVariant::main_denominator;
  double chosen = numerator ? rep.variant_ratio_numerator : rep.variant_ratio_denominator;
  rep.selected_tracks = std::abs(chosen - 1.0) <= 0.3;
  return rep;
}

AmplifierReport amplifier_report(double N, double t, double r) {
  const double top = std::ceil(2 * N);
  if (top > double(kMaxSieveLimit))
    throw ResourceError("amplifier needs a sieve beyond " + std::to_string(kMaxSieveLimit));
  SpfTable table(static_cast<std::uint64_t>(std::max(top, 2.0)));
  return amplifier_report(N, t, r, table);
}

}  // namespace eisen
