#include "eisen/kbessel.hpp"

#include "eisen/errors.hpp"
#include "eisen/quadrature.hpp"
#include "special_impl.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

namespace eisen {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_argument(const BesselOrder& nu, double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("K-Bessel argument must be positive and finite");
  if (nu.t() > kBesselMaxT) throw RangeError("K-Bessel order |Im nu| exceeds " + std::to_string(kBesselMaxT));
}

// ---------------------------------------------------------------------------
// Power series

template <class R>
struct SeriesPass {
  std::complex<R> value;
  R err;  // absolute error estimate in the working precision
};

// Non-integer order:
//   e^{pi t/2} K = (u/2)^{-nu} G S_- / (2 nu) - pi (u/2)^{nu} S_+ / (2 Sn G)
// with G = Gamma(1+nu) e^{pi t/2}, Sn = sin(pi nu) e^{-pi t},
// S_{+-} = sum_k z^k / (k! (1 +- nu)_k), z = u^2/4.
template <class R>
SeriesPass<R> series_general(const R& sigma, const R& t, const R& u) {
  using namespace detail;
  using std::abs;
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  const R pi = RealTraits<R>::pi();
  const R eps = RealTraits<R>::eps();
  const C<R> nu(sigma, t);
  const R z = u * u / 4;
  const R L = log(u / 2);

  C<R> lg = log_gamma(C<R>(R(1) + sigma, t));
  C<R> G = cexp(C<R>(lg.real() + pi * t / 2, lg.imag()));
  C<R> p_minus = cexp(C<R>(-sigma * L, -t * L));
  C<R> p_plus = cexp(C<R>(sigma * L, t * L));
  const R e2 = exp(-2 * pi * t);
  C<R> sn(sin(pi * sigma) * (R(1) + e2) / 2, cos(pi * sigma) * (R(1) - e2) / 2);

  auto sum_series = [&](int sign, R& max_term) {
    C<R> term(1, 0), sum(1, 0);
    max_term = R(1);
    for (int k = 1; k < 200000; ++k) {
      C<R> denom(R(k) + sign * sigma, sign * t);
      denom = C<R>(denom.real() * R(k), denom.imag() * R(k));
      term = cdiv(C<R>(term.real() * z, term.imag() * z), denom);
      sum += term;
      R mag = cabs(term);
      if (mag > max_term) max_term = mag;
      // past the peak and below working precision
      if (z < R(k) * cabs(C<R>(R(k) + sign * sigma, sign * t)) / 2 && mag < eps * cabs(sum) / 16) break;
    }
    return sum;
  };
  R max_minus, max_plus;
  C<R> s_minus = sum_series(-1, max_minus);
  C<R> s_plus = sum_series(+1, max_plus);

  C<R> pre_a = cdiv(cmul(p_minus, G), C<R>(2 * sigma, 2 * t));
  C<R> pre_b = cdiv(C<R>(pi * p_plus.real(), pi * p_plus.imag()), cmul(C<R>(2 * sn.real(), 2 * sn.imag()), G));
  C<R> a = cmul(pre_a, s_minus);
  C<R> b = cmul(pre_b, s_plus);
  C<R> value = a - b;

  R scale = cabs(pre_a) * max_minus + cabs(pre_b) * max_plus;
  R factor_err = (cabs(a) + cabs(b)) * (cabs(lg) + cabs(nu) * abs(L) + pi * t + R(10));
  return {value, eps * (R(8) * scale + factor_err)};
}

// Integer order n in {0, 1, 2}, t = 0:
//   K_n(u) = (1/2)(u/2)^{-n} sum_{k<n} (n-k-1)!/k! (-z)^k + (-1)^{n+1} log(u/2) I_n(u)
//          + (-1)^n (1/2)(u/2)^n sum_k (psi(k+1) + psi(n+k+1)) z^k / (k! (n+k)!)
template <class R>
SeriesPass<R> series_integer(int n, const R& u) {
  using namespace detail;
  using std::abs;
  using std::log;
  using std::pow;
  const R eps = RealTraits<R>::eps();
  const R gamma_e = RealTraits<R>::euler_gamma();
  const R z = u * u / 4;
  const R L = log(u / 2);
  const R half_u = u / 2;

  R finite(0);
  R fact_nk1(1);  // (n-k-1)!
  for (int j = 2; j <= n - 1; ++j) fact_nk1 *= R(j);
  R kfact(1), zk(1);
  R finite_abs(0);
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      kfact *= R(k);
      zk *= -z;
      fact_nk1 /= R(n - k);
    }
    R term = fact_nk1 / kfact * zk;
    finite += term;
    finite_abs += abs(term);
  }
  R pow_minus = pow(half_u, -n);
  finite *= pow_minus / 2;
  finite_abs *= pow_minus / 2;

  // I_n sum and the digamma sum share z^k / (k! (n+k)!)
  R nfact(1);
  for (int j = 2; j <= n; ++j) nfact *= R(j);
  R base = R(1) / nfact;  // k = 0
  R H_k(0), H_nk(0);
  for (int j = 1; j <= n; ++j) H_nk += R(1) / R(j);
  R i_sum(0), psi_sum(0), max_term(0);
  for (int k = 0; k < 100000; ++k) {
    if (k > 0) {
      base *= z / (R(k) * R(n + k));
      H_k += R(1) / R(k);
      H_nk += R(1) / R(n + k);
    }
    R psi = -2 * gamma_e + H_k + H_nk;
    R pt = psi * base;
    i_sum += base;
    psi_sum += pt;
    R mag = abs(pt) + abs(L * base);
    if (mag > max_term) max_term = mag;
    if (R(k) > z && mag < eps * (abs(psi_sum) + abs(L * i_sum)) / 16) break;
  }
  R pow_plus = pow(half_u, n);
  R sign = (n % 2 == 0) ? R(1) : R(-1);
  R log_part = -sign * L * pow_plus * i_sum;  // (-1)^{n+1}
  R psi_part = sign * pow_plus * psi_sum / 2;
  R value = finite + log_part + psi_part;
  R scale = finite_abs + pow_plus * max_term;
  return {std::complex<R>(value, R(0)), eps * R(8) * (scale + abs(value))};
}

struct SeriesResult {
  cplx value;
  double err;
};

template <class R>
SeriesResult run_series(double sigma, double t, double u) {
  bool integer = (t == 0.0 && sigma == std::round(sigma));
  SeriesPass<R> p = integer ? series_integer<R>(static_cast<int>(std::lround(sigma)), R(u))
                            : series_general<R>(R(sigma), R(t), R(u));
  double re, im, err;
  if constexpr (std::is_floating_point_v<R>) {
    re = static_cast<double>(p.value.real());
    im = static_cast<double>(p.value.imag());
    err = static_cast<double>(p.err);
  } else {
    re = p.value.real().template convert_to<double>();
    im = p.value.imag().template convert_to<double>();
    err = p.err.template convert_to<double>();
  }
  return {cplx(re, im), err};
}

int next_digits(int digits, double needed) {
  static const int ladder[] = {32, 64, 128, 256, 500};
  for (int d : ladder)
    if (d > digits && d >= needed) return d;
  return digits >= 500 ? -1 : 500;
}

// ---------------------------------------------------------------------------
// Constant-phase contour for the quadrature method

// sinh h - h, accurate for small h
template <class R>
R sinh_minus_x(R h) {
  if (std::abs(h) < 0.5) {
    R h2 = h * h;
    return h * h2 *
           (R(1) / 6 + h2 * (R(1) / 120 + h2 * (R(1) / 5040 + h2 * (R(1) / 362880 + h2 * (R(1) / 39916800 + h2 / R(6227020800))))));
  }
  return std::sinh(h) - h;
}

// sinh h - h cosh h, accurate for small h
template <class R>
R sinh_minus_x_cosh(R h) {
  if (std::abs(h) < 0.5) {
    R h2 = h * h;
    return -h * h2 *
           (R(1) / 3 + h2 * (R(1) / 30 + h2 * (R(1) / 840 + h2 * (R(1) / 45360 + h2 * (R(1) / 3991680 + h2 / R(518918400))))));
  }
  return std::sinh(h) - h * std::cosh(h);
}

// Carried in long double: the exponent t psi - u cosh(rho) cos(theta) and the
// flat-stretch phase are differences of terms of size t.
struct Contour {
  using R = long double;
  static constexpr R kHalfPi = 1.5707963267948966192313216916397514L;
  R sigma, t, u;
  bool below;  // u < t: a flat stretch at Im v = pi/2 precedes the descent
  R a = 0, sinh_a = 0, cosh_a = 1;
  R phase = 0;  // constant imaginary part on the descending branch

  Contour(double s, double tt, double uu) : sigma(s), t(tt), u(uu), below(uu < tt) {
    if (below) {
      a = std::acosh(t / u);
      sinh_a = std::sinh(a);
      cosh_a = t / u;
      phase = t * a - u * sinh_a;
    }
  }

  static cplx polar(R mag, R arg) {
    return {static_cast<double>(mag * std::cos(arg)), static_cast<double>(mag * std::sin(arg))};
  }

  // Integrand on the flat stretch, rho in [0, a].
  cplx flat(double r) const {
    const R rho = r;
    const R ph = t * rho - u * std::sinh(rho);
    cplx right = polar(std::exp(sigma * rho), ph + sigma * kHalfPi);
    cplx left = polar(std::exp(-sigma * rho), -ph + sigma * kHalfPi);
    return 0.5 * (right + left);
  }

  struct Point {
    R one_minus_g, g, dg;
  };

  Point geometry(R rho) const {
    const R shr = std::sinh(rho);
    if (below) {
      const R h = rho - a;
      const R sh2 = std::sinh(h / 2);
      R omg = (sinh_a * 2 * sh2 * sh2 + cosh_a * sinh_minus_x(h)) / shr;
      R num = cosh_a * cosh_a * sinh_minus_x_cosh(h) - sinh_a * std::sinh(h) * (sinh_a + cosh_a * h);
      return {omg, 1 - omg, num / (shr * shr)};
    }
    const R k = t / u;
    if (rho == 0) return {(u - t) / u, k, 0};
    R omg = ((u - t) * shr + t * sinh_minus_x(rho)) / (u * shr);
    return {omg, k * rho / shr, k * sinh_minus_x_cosh(rho) / (shr * shr)};
  }

  // log-magnitude of the larger branch, used to find the integration end
  double log_mag(double r) const {
    const R rho = r;
    if (below && rho <= a) return static_cast<double>(std::abs(sigma) * rho);
    Point p = geometry(rho);
    R cos_t = std::sqrt(std::max(R(0), p.one_minus_g * (1 + p.g)));
    R psi = std::atan2(cos_t, p.g);
    return static_cast<double>(t * psi - u * std::cosh(rho) * cos_t + std::abs(sigma) * rho);
  }

  // Integrand on the descending branch.
  cplx descent(double r) const {
    const R rho = r;
    Point p = geometry(rho);
    R cos_t = std::sqrt(std::max(R(0), p.one_minus_g * (1 + p.g)));
    R psi = std::atan2(cos_t, p.g);  // pi/2 - theta
    R theta = kHalfPi - psi;
    R dtheta;
    if (cos_t > 0) {
      dtheta = p.dg / cos_t;
    } else {
      dtheta = below ? R(-1) : -1 / std::sqrt(R(3));
    }
    R common = t * psi - u * std::cosh(rho) * cos_t;
    cplx right = polar(std::exp(common + sigma * rho), phase + sigma * theta);
    cplx left = polar(std::exp(common - sigma * rho), -phase + sigma * theta);
    const double dt = static_cast<double>(dtheta);
    return 0.5 * (right * cplx(1.0, dt) + left * cplx(1.0, -dt));
  }
};

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::oscillatory: return "oscillatory";
    case Regime::transition: return "transition";
    case Regime::decay: return "decay";
  }
  return "unknown";
}

BesselOrder::BesselOrder(double sigma, double t) : sigma_(sigma), t_(t) {
  if (!std::isfinite(sigma) || !std::isfinite(t)) throw DomainError("Bessel order must be finite");
  if (std::abs(sigma) > kBesselMaxSigma) throw DomainError("Bessel order: |Re nu| exceeds supported band");
  if (t_ < 0.0 || (t_ == 0.0 && sigma_ < 0.0)) {
    sigma_ = -sigma_;
    t_ = -t_;
  }
  if (t_ == 0.0) t_ = 0.0;  // drop a negative zero
}

Regime classify_regime(double t, double u, double C) {
  double width = C * std::cbrt(t);
  if (u < t - width) return Regime::oscillatory;
  if (std::abs(u - t) <= width) return Regime::transition;
  return Regime::decay;
}

BesselValue k_series(const BesselOrder& nu, double u, double tol, int start_digits) {
  check_argument(nu, u);
  const double sigma = nu.sigma(), t = nu.t();
  int digits = std::max(16, start_digits);
  for (;;) {
    SeriesResult r;
    if (digits <= 16) {
      r = run_series<double>(sigma, t, u);
    } else {
      PrecisionScope scope(static_cast<unsigned>(digits));
      r = run_series<MpReal>(sigma, t, u);
    }
    double mag = std::abs(r.value);
    double err = r.err + (digits > 16 ? mag * DBL_EPSILON : 0.0);
    if (std::isfinite(mag) && mag > 0.0 && err <= tol * mag) {
      return {r.value, kPi * t / 2, err, classify_regime(t, u), Method::series};
    }
    double loss = (std::isfinite(mag) && mag > 0.0 && std::isfinite(r.err))
                      ? std::log10(std::max(r.err, 1e-300) / mag) + digits
                      : 2.0 * digits;
    double needed = loss - std::log10(tol) + 6.0;
    if (digits > 16 && err - r.err > tol * mag)
      throw PrecisionError("K-Bessel series: tolerance below double rounding");
    int next = next_digits(digits, needed);
    if (next < 0) throw PrecisionError("K-Bessel series: escalation cap of 500 digits reached");
    digits = next;
  }
}

BesselValue k_quadrature(const BesselOrder& nu, double u, double tol) {
  check_argument(nu, u);
  const double sigma = nu.sigma(), t = nu.t();
  Contour c(sigma, t, u);

  // March out until the integrand has dropped e^{-50} below its running peak.
  const double start = c.below ? static_cast<double>(c.a) : 0.0;
  double peak = c.log_mag(start);
  double end = start;
  for (int i = 0; i < 4000; ++i) {
    end += 0.25;
    double lm = c.log_mag(end);
    peak = std::max(peak, lm);
    if (lm < peak - 50.0) break;
  }
  const double flat_width = std::min(0.25, kPi / std::max(t, 1.0));
  const double width = 1.0 / std::sqrt(1.0 + std::sqrt(std::abs(u * u - t * t)) + std::pow(t, 2.0 / 3.0));

  auto run = [&](double qtol) {
    QuadResult total;
    if (c.below) total = integrate_panels([&](double r) { return c.flat(r); }, 0.0, start, flat_width, qtol);
    QuadResult d = integrate_panels([&](double r) { return c.descent(r); }, start, end, width, qtol);
    total.value += d.value;
    total.abs_err += d.abs_err;
    total.l1 += d.l1;
    return total;
  };
  auto error_of = [&](const QuadResult& q) {
    // exponents and phases up to max(t a, |phase|, t pi / 2) are carried in
    // long double; each sample is then rounded to double
    double max_phase = std::max({std::abs(static_cast<double>(c.phase)), t * static_cast<double>(c.a), t * kPi / 2});
    return q.abs_err + q.l1 * (4.0 * DBL_EPSILON + 2.0 * LDBL_EPSILON * max_phase) + std::abs(q.value) * DBL_EPSILON;
  };

  double qtol = std::max(0.05 * tol, 1e-15);
  QuadResult total = run(qtol);
  double mag = std::abs(total.value);
  double err = error_of(total);
  if (!(err <= tol * mag) && mag > 0.0 && total.l1 > mag) {
    // cancellation: tighten the per-panel tolerance by the observed L1 ratio
    total = run(std::max(qtol * mag / total.l1, 1e-16));
    mag = std::abs(total.value);
    err = error_of(total);
  }
  if (!(err <= tol * mag))
    throw ConvergenceError("K-Bessel quadrature at nu = " + std::to_string(sigma) + " + " + std::to_string(t) +
                           "i, u = " + std::to_string(u) + ": relative error estimate 10^" + std::to_string(std::log10(err / mag)) +
                           " exceeds tolerance");
  return {total.value, kPi * t / 2, err, classify_regime(t, u), Method::quadrature};
}

BesselValue k_mellin_barnes(const BesselOrder& nu, double u, double tol, double delta) {
  check_argument(nu, u);
  const double sigma = nu.sigma(), t = nu.t();
  if (delta < 0.0) delta = std::abs(sigma) + 1.0;
  if (!(delta > std::abs(sigma))) throw DomainError("Mellin-Barnes contour must lie right of the poles");
  if (u > 10.0 * std::max(t, 1.0)) throw ConvergenceError("Mellin-Barnes: argument too large for the contour");

  using LD = long double;
  using CL = std::complex<LD>;
  const LD L = std::log(static_cast<LD>(u) / 2);
  const CL nul(sigma, t);
  const LD shift = static_cast<LD>(kPi) * t / 2;
  LD max_exponent = 0;
  auto f = [&](double v) -> cplx {
    CL w(delta, v);
    CL e = shift - w * L + detail::log_gamma(CL((w + nul) / LD(2))) + detail::log_gamma(CL((w - nul) / LD(2)));
    max_exponent = std::max(max_exponent, std::abs(e.imag()));
    CL r = std::exp(e);
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
  };
  const double V = t + 60.0;
  const double qtol = std::max(0.05 * tol, 1e-15);
  QuadResult q = integrate_panels(f, -V, V, 1.0, qtol);
  const double norm = 1.0 / (8.0 * kPi);
  cplx value = q.value * norm;
  double mag = std::abs(value);
  double err = (q.abs_err + 4.0 * DBL_EPSILON * q.l1 +
                static_cast<double>(LDBL_EPSILON * max_exponent) * q.l1) * norm +
               mag * DBL_EPSILON;
  if (!(err <= tol * mag))
    throw ConvergenceError("Mellin-Barnes: cancellation leaves relative error " + std::to_string(std::log10(err / mag)));
  return {value, kPi * t / 2, err, classify_regime(t, u), Method::mellin_barnes};
}

double series_band_max(double t) { return std::max(10.0, 0.5 * t); }
double quadrature_band_min(double t) { return 0.25 * t; }

BesselValue k_bessel(const BesselOrder& nu, double u, double tol) {
  check_argument(nu, u);
  const double t = nu.t();
  const bool series = u <= series_band_max(t);
  const bool quad = u >= quadrature_band_min(t);
  if (series && quad) {
    // either method alone suffices in the overlap; when both succeed the
    // discrepancy is folded into the error
    BesselValue a = k_series(nu, u, tol);
    try {
      BesselValue b = k_quadrature(nu, u, tol);
      a.abs_err += std::abs(a.scaled_value - b.scaled_value);
    } catch (const ConvergenceError&) {
    }
    return a;
  }
  if (series) return k_series(nu, u, tol);
  try {
    return k_quadrature(nu, u, tol);
  } catch (const ConvergenceError& quad_failure) {
    // the quadrature roundoff floor can sit just above a tight tol; the
    // series reaches it by escalating digits
    try {
      return k_series(nu, u, tol);
    } catch (const Error&) {
      throw quad_failure;
    }
  }
}

BesselProvider default_bessel_provider() {
  return [](const BesselOrder& nu, double u, double tol) { return k_bessel(nu, u, tol); };
}

Envelope balogh_envelope(double t, double u, const EnvelopeConstants& k) {
  if (!(t >= 1.0)) throw DomainError("envelope requires t >= 1");
  if (!(u > 0.0)) throw DomainError("envelope requires u > 0");
  Regime r = classify_regime(t, u, k.C);
  switch (r) {
    case Regime::oscillatory: return {std::pow(t, -0.25) * std::pow(t - u, -0.25), r};
    case Regime::transition: return {std::pow(t, -1.0 / 3.0), r};
    case Regime::decay: {
      double x = (u - t) / std::cbrt(t);
      double e = k.c * std::pow(u / t, 1.5) * std::pow(x, 1.5);
      return {std::pow(u, -0.25) * std::pow(u - t, -0.25) * std::exp(-e), r};
    }
  }
  return {0.0, r};
}

double cosh_normalized_abs(const BesselValue& v, double t) {
  return std::abs(v.scaled_value) * (1.0 + std::exp(-kPi * t)) / 2.0;
}

}  // namespace eisen
