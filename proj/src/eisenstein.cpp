#include "eisen/eisenstein.hpp"

#include "eisen/arithmetic.hpp"
#include "eisen/errors.hpp"
#include "eisen/gamma_zeta.hpp"

#include <cfloat>
#include <cmath>
#include <string>

namespace eisen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxReductionMoves = 10'000;

// cos(2 pi n x) with n x reduced mod 1 first, so x and x + 1 agree to rounding.
double cos_mode(int n, double x) {
  double nx = n * x;
  nx -= std::round(nx);
  return std::cos(2 * kPi * nx);
}

BesselProvider provider_of(const FourierOptions& opt) {
  return opt.bessel ? opt.bessel : default_bessel_provider();
}

struct ModeSum {
  cplx value;  // F(z, s)
  double abs_err = 0.0;
  int n_terms = 0;
};

// F(z, s) from the non-constant modes. No restriction on Re s beyond the
// Bessel order band, so this also serves the reflected point 1 - s.
ModeSum mode_sum(const UpperHalfPoint& z, cplx s, const FourierOptions& opt) {
  const double sigma = s.real(), t = s.imag();
  const BesselOrder order(sigma - 0.5, t);
  const BesselProvider bessel = provider_of(opt);
  // both the Bessel values and xi(2s) carry the factor e^{pi |t| / 2}
  const cplx xi = completed_zeta_scaled(2.0 * s);
  const cplx pref = 4.0 * std::sqrt(z.y()) / xi;
  const int n_max = fourier_cutoff(t, z.y());

  ModeSum out;
  cplx acc = 0.0;
  double err = 0.0;
  for (int n = 1; n <= n_max + 1; ++n) {
    BesselValue k = bessel(order, 2 * kPi * n * z.y(), opt.tol);
    cplx tau = tau_w(factor_trial(static_cast<std::uint64_t>(n)), s - 0.5);
    cplx coeff = pref * tau;
    if (n > n_max) {
      // the first omitted mode bounds the geometrically decaying tail
      err += 2.0 * std::abs(coeff * k.scaled_value);
      break;
    }
    acc += coeff * cos_mode(n, z.x()) * k.scaled_value;
    err += std::abs(coeff) * k.abs_err;
  }
  out.value = acc;
  out.abs_err = err + std::abs(acc) * 16 * DBL_EPSILON;
  out.n_terms = n_max;
  return out;
}

cplx constant_term(const UpperHalfPoint& z, cplx s, double tol) {
  const double ly = std::log(z.y());
  cplx phi = scattering_phi(SpectralPoint(s), std::max(tol, 1e-14)).value;
  return std::exp(s * ly) + phi * std::exp((1.0 - s) * ly);
}

EisensteinValue fourier_any(const UpperHalfPoint& z, cplx s, const FourierOptions& opt) {
  ModeSum f = mode_sum(z, s, opt);
  EisensteinValue v;
  v.constant_term = constant_term(z, s, opt.tol);
  v.value = v.constant_term + f.value;
  v.abs_err = f.abs_err + std::abs(v.constant_term) * 8 * DBL_EPSILON;
  v.n_terms_used = f.n_terms;
  return v;
}

void check_fourier_range(const SpectralPoint& s) {
  if (s.sigma() < 0.5 || s.sigma() > 2.5)
    throw DomainError("Fourier evaluator needs 1/2 <= Re s <= 5/2, got " + std::to_string(s.sigma()));
}

void check_critical_height(double T) {
  if (!(T >= 1.0 && T <= kBesselMaxT)) throw DomainError("e_critical needs 1 <= T <= 2000");
}

}  // namespace

UpperHalfPoint::UpperHalfPoint(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("point must be finite");
  if (y <= 1e-6) throw DomainError("point must satisfy y > 1e-6");
}

UpperHalfPoint Sl2z::apply(const UpperHalfPoint& p) const {
  cplx z = p.z();
  cplx w = (double(a) * z + double(b)) / (double(c) * z + double(d));
  return {w.real(), w.imag()};
}

Sl2z Sl2z::operator*(const Sl2z& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Reduction reduce_to_fundamental_domain(const UpperHalfPoint& p) {
  double x = p.x(), y = p.y();
  Sl2z g;
  for (int moves = 0; moves < kMaxReductionMoves; ++moves) {
    double shift = std::floor(x + 0.5);
    if (shift != 0.0) {
      x -= shift;
      g = Sl2z{1, -static_cast<long long>(shift), 0, 1} * g;
    }
    double r2 = x * x + y * y;
    bool inside = r2 < 1.0;
    bool tie = r2 == 1.0 && x < 0.0 && x > -0.5;
    if (!inside && !tie) return {UpperHalfPoint(x, y), g};
    // z -> -1/z
    x = -x / r2;
    y = y / r2;
    g = Sl2z{0, -1, 1, 0} * g;
  }
  throw IterationError("fundamental domain reduction did not terminate");
}

int fourier_cutoff(double t, double y) {
  const double at = std::abs(t);
  return static_cast<int>(std::ceil((at + 12 * std::cbrt(at) + 50) / (2 * kPi * y))) + 5;
}

EisensteinValue eisenstein_fourier(const UpperHalfPoint& z, const SpectralPoint& s, const FourierOptions& opt) {
  check_fourier_range(s);
  return fourier_any(z, s.value(), opt);
}

EisensteinValue eisenstein_fourier(const UpperHalfPoint& z, const SpectralPoint& s, double tol) {
  return eisenstein_fourier(z, s, FourierOptions{tol, nullptr});
}

EvalResult remainder_F(const UpperHalfPoint& z, const SpectralPoint& s, const FourierOptions& opt) {
  check_fourier_range(s);
  ModeSum f = mode_sum(z, s.value(), opt);
  return {f.value, f.abs_err, Method::fourier};
}

EvalResult remainder_F(const UpperHalfPoint& z, const SpectralPoint& s, double tol) {
  return remainder_F(z, s, FourierOptions{tol, nullptr});
}

std::vector<EisensteinValue> e_critical_row(const std::vector<double>& xs, double y, double T,
                                            const FourierOptions& opt) {
  check_critical_height(T);
  const UpperHalfPoint probe(0.0, y);
  const BesselOrder order(0.0, T);
  const BesselProvider bessel = provider_of(opt);
  const cplx s(0.5, T);
  const cplx xi = completed_zeta_scaled(2.0 * s);
  const cplx pref = 4.0 * std::sqrt(y) / xi;
  const int n_max = fourier_cutoff(T, y);

  // K_{iT}(u) and tau_{iT}(n) are real
  std::vector<double> coeff(n_max + 1, 0.0);
  double err_sum = 0.0;
  for (int n = 1; n <= n_max + 1; ++n) {
    BesselValue k = bessel(order, 2 * kPi * n * y, opt.tol);
    double tau = tau_it(factor_trial(static_cast<std::uint64_t>(n)), T);
    if (n > n_max) {
      err_sum += 2.0 * std::abs(tau * k.scaled_value.real());
      break;
    }
    coeff[n] = tau * k.scaled_value.real();
    err_sum += std::abs(tau) * (k.abs_err + std::abs(k.scaled_value.imag()));
  }
  const cplx c0 = constant_term(probe, s, opt.tol);

  std::vector<EisensteinValue> out;
  out.reserve(xs.size());
  for (double x : xs) {
    double acc = 0.0, l1 = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      double term = coeff[n] * cos_mode(n, x);
      acc += term;
      l1 += std::abs(term);
    }
    EisensteinValue v;
    v.constant_term = c0;
    v.value = c0 + pref * acc;
    v.abs_err = std::abs(pref) * (err_sum + l1 * 16 * DBL_EPSILON) + std::abs(c0) * 8 * DBL_EPSILON;
    v.n_terms_used = n_max;
    out.push_back(v);
  }
  return out;
}

EisensteinValue e_critical(const UpperHalfPoint& z, double T, const FourierOptions& opt) {
  return e_critical_row({z.x()}, z.y(), T, opt).front();
}

EisensteinValue e_critical(const UpperHalfPoint& z, double T, double tol) {
  return e_critical(z, T, FourierOptions{tol, nullptr});
}

double functional_equation_residual(const UpperHalfPoint& z, const SpectralPoint& s, const FourierOptions& opt) {
  if (s.sigma() < 0.5 || s.sigma() > 1.0) throw DomainError("functional equation residual needs 1/2 <= Re s <= 1");
  const cplx sv = s.value();
  EisensteinValue e1 = fourier_any(z, sv, opt);
  EisensteinValue e2 = fourier_any(z, 1.0 - sv, opt);
  // same e^{pi |t| / 2} scaling on both sides
  cplx lhs = completed_zeta_scaled(2.0 * sv) * e1.value;
  cplx rhs = completed_zeta_scaled(2.0 - 2.0 * sv) * e2.value;
  return std::abs(lhs - rhs) / (std::abs(lhs) + 1e-300);
}

}  // namespace eisen
