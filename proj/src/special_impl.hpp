#pragma once

// Precision-generic kernels shared by gamma_zeta.cpp and kbessel.cpp. Every
// routine is templated on the real type (double or MpReal) and assumes the
// caller has fixed the MPFR precision when R = MpReal.

#include "eisen/multiprecision.hpp"

#include <cfloat>
#include <cmath>
#include <complex>
#include <type_traits>

namespace eisen::detail {

template <class R>
using C = std::complex<R>;

template <class R>
struct RealTraits;

template <>
struct RealTraits<double> {
  static double pi() { return 3.14159265358979323846; }
  static double euler_gamma() { return 0.57721566490153286061; }
  static double eps() { return DBL_EPSILON; }
  static int digits() { return 16; }
  static double bernoulli(int k) { return bernoulli_b2n_double(k); }
};

template <>
struct RealTraits<long double> {
  static long double pi() { return 3.141592653589793238462643383279502884L; }
  static long double euler_gamma() { return 0.577215664901532860606512090082402431L; }
  static long double eps() { return LDBL_EPSILON; }
  static int digits() { return 19; }
  static long double bernoulli(int k) { return bernoulli_b2n_long_double(k); }
};

template <>
struct RealTraits<MpReal> {
  static MpReal pi() {
    MpReal r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
  }
  static MpReal euler_gamma() {
    MpReal r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
  }
  static MpReal eps() {
    using std::pow;
    return pow(MpReal(10), -static_cast<int>(MpReal::default_precision()));
  }
  static int digits() { return static_cast<int>(MpReal::default_precision()); }
  static MpReal bernoulli(int k) { return bernoulli_b2n_mp(k); }
};

template <class R>
R cabs(const C<R>& z) {
  if constexpr (std::is_floating_point_v<R>) {
    return std::abs(z);
  } else {
    using std::sqrt;
    return sqrt(z.real() * z.real() + z.imag() * z.imag());
  }
}

template <class R>
C<R> cexp(const C<R>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  R e = exp(z.real());
  return {e * cos(z.imag()), e * sin(z.imag())};
}

template <class R>
C<R> clog(const C<R>& z) {
  using std::atan2;
  using std::log;
  return {log(cabs(z)), atan2(z.imag(), z.real())};
}

template <class R>
C<R> cmul(const C<R>& a, const C<R>& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

template <class R>
C<R> cinv(const C<R>& a) {
  R n = a.real() * a.real() + a.imag() * a.imag();
  return {a.real() / n, -a.imag() / n};
}

template <class R>
C<R> cdiv(const C<R>& a, const C<R>& b) {
  if constexpr (std::is_floating_point_v<R>) {
    return a / b;
  } else {
    return cmul(a, cinv(b));
  }
}

template <class R>
R round_to_int(const R& x) {
  using std::floor;
  return floor(x + R(0.5));
}

// log sin(pi z) for Im z >= 0. The branch is whatever the formulas give.
template <class R>
C<R> log_sin_pi_upper(const C<R>& z) {
  using std::cos;
  using std::cosh;
  using std::log;
  using std::sin;
  using std::sinh;
  const R pi = RealTraits<R>::pi();
  if (z.imag() > R(1)) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
    C<R> e2 = cexp(C<R>(-2 * pi * z.imag(), 2 * pi * z.real()));
    C<R> lead(pi * z.imag() - log(R(2)), -pi * z.real() + pi / 2);
    return lead + clog(C<R>(R(1) - e2.real(), -e2.imag()));
  }
  R n = round_to_int(z.real());
  R a = pi * (z.real() - n);
  R b = pi * z.imag();
  C<R> sn(sin(a) * cosh(b), cos(a) * sinh(b));
  return clog(sn) + C<R>(R(0), pi * n);
}

template <class R>
C<R> log_sin_pi(const C<R>& z) {
  if (z.imag() < R(0)) return std::conj(log_sin_pi_upper(std::conj(z)));
  return log_sin_pi_upper(z);
}

// Stirling series for Re z >= 1/2 after upward shifting until |z| >= target.
template <class R>
C<R> log_gamma_right(C<R> z) {
  using std::log;
  const int digits = RealTraits<R>::digits();
  const R target = R(digits > 19 ? 1.0 * digits : 15.0);
  const R eps = RealTraits<R>::eps();
  C<R> shift_log(0, 0);
  if constexpr (std::is_floating_point_v<R>) {
    while (cabs(z) < target) {
      shift_log += clog(z);
      z += R(1);
    }
  } else {
    // Products are cheap in MPFR and the exponent range is effectively
    // unbounded; one log at the end replaces hundreds.
    C<R> prod(1, 0);
    while (cabs(z) < target) {
      prod = cmul(prod, z);
      z += R(1);
    }
    shift_log = clog(prod);
  }
  const R half_log_2pi = log(2 * RealTraits<R>::pi()) / 2;
  C<R> lz = clog(z);
  C<R> result = cmul(z - C<R>(R(0.5), R(0)), lz) - z + C<R>(half_log_2pi, R(0));
  C<R> inv = cinv(z);
  C<R> inv2 = cmul(inv, inv);
  C<R> pw = inv;
  const R scale = cabs(result) + R(1);
  R prev = R(-1);
  for (int k = 1; k <= kMaxBernoulliIndex; ++k) {
    R coef = RealTraits<R>::bernoulli(k) / R(2 * k * (2 * k - 1));
    C<R> term(coef * pw.real(), coef * pw.imag());
    R mag = cabs(term);
    if (prev >= R(0) && mag > prev) break;
    result += term;
    if (mag < eps * scale) break;
    prev = mag;
    pw = cmul(pw, inv2);
  }
  return result - shift_log;
}

template <class R>
C<R> log_gamma_upper(const C<R>& z) {
  if (z.real() < R(0.5)) {
    using std::log;
    C<R> one_minus(R(1) - z.real(), -z.imag());
    return C<R>(log(RealTraits<R>::pi()), R(0)) - log_sin_pi(z) - log_gamma_right(one_minus);
  }
  return log_gamma_right(z);
}

// Conjugation symmetry is enforced by evaluating in the closed upper half.
template <class R>
C<R> log_gamma(const C<R>& z) {
  if (z.imag() < R(0)) return std::conj(log_gamma_upper(std::conj(z)));
  return log_gamma_upper(z);
}

struct EmParams {
  long n_terms;
  int bernoulli_terms;  // <= 0 means adaptive until below working epsilon
};

template <class R>
struct EmResult {
  C<R> value;
  R truncation;  // bound on the first omitted correction term
  R abs_sum;     // sum of |n^{-s}|, drives the roundoff estimate
};

// Euler-Maclaurin for zeta(s), any s != 1; accurate when Re s > -2m and N is
// comparable with |Im s|.
template <class R>
EmResult<R> zeta_em(const C<R>& s, const EmParams& p) {
  using std::log;
  const long N = p.n_terms;
  C<R> sum(0, 0);
  R abs_sum(0);
  for (long n = 1; n < N; ++n) {
    R ln = log(R(n));
    C<R> term = cexp(C<R>(-s.real() * ln, -s.imag() * ln));
    sum += term;
    abs_sum += cabs(term);
  }
  const R lnN = log(R(N));
  C<R> Ns = cexp(C<R>(-s.real() * lnN, -s.imag() * lnN));
  C<R> sm1(s.real() - R(1), s.imag());
  sum += cdiv(C<R>(Ns.real() * R(N), Ns.imag() * R(N)), sm1);
  sum += C<R>(Ns.real() / 2, Ns.imag() / 2);

  const R eps = RealTraits<R>::eps();
  const int m_cap = p.bernoulli_terms > 0 ? p.bernoulli_terms : kMaxBernoulliIndex - 1;
  // term_k = B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
  C<R> poch = s;
  C<R> powN(Ns.real() / R(N), Ns.imag() / R(N));
  R fact(2);
  const R N2 = R(N) * R(N);
  R truncation(0);
  for (int k = 1; k <= m_cap + 1; ++k) {
    R coef = RealTraits<R>::bernoulli(k) / fact;
    C<R> t = cmul(poch, powN);
    t = C<R>(t.real() * coef, t.imag() * coef);
    R mag = cabs(t);
    if (k == m_cap + 1) {
      truncation = mag;
      break;
    }
    sum += t;
    if (p.bernoulli_terms <= 0 && mag < eps * (cabs(sum) + R(1))) {
      truncation = mag;
      break;
    }
    C<R> a(s.real() + R(2 * k - 1), s.imag());
    C<R> b(s.real() + R(2 * k), s.imag());
    poch = cmul(poch, cmul(a, b));
    powN = C<R>(powN.real() / N2, powN.imag() / N2);
    fact *= R((2 * k + 1) * (2 * k + 2));
  }
  // The remainder after m terms is bounded by the next term times
  // |s + 2m + 1| / (Re s + 2m + 1).
  R m_real = R(2 * m_cap + 1);
  C<R> q(s.real() + m_real, s.imag());
  R ratio = cabs(q) / (s.real() + m_real > R(0.5) ? s.real() + m_real : R(0.5));
  return {sum, truncation * ratio, abs_sum};
}

template <class R>
long zeta_em_cutoff(const C<R>& s, int digits) {
  using std::abs;
  double t = std::fabs(static_cast<double>(s.imag()));
  double n = std::max({50.0, std::ceil(2.0 * t), digits > 16 ? 1.0 * digits : 0.0});
  return static_cast<long>(n);
}

// zeta in the working precision of R with adaptive Bernoulli count; uses the
// functional equation on the left half plane.
template <class R>
C<R> zeta_full(const C<R>& s) {
  using std::log;
  if (s.real() < R(0)) {
    const R pi = RealTraits<R>::pi();
    C<R> one_minus(R(1) - s.real(), -s.imag());
    C<R> z1 = zeta_full(one_minus);
    C<R> half(s.real() / 2, s.imag() / 2);
    C<R> l = C<R>(s.real() * log(R(2)) + (s.real() - R(1)) * log(pi), s.imag() * (log(R(2)) + log(pi))) +
             log_sin_pi(half) + log_gamma(one_minus) + clog(z1);
    return cexp(l);
  }
  EmParams p{zeta_em_cutoff(s, RealTraits<R>::digits()), 0};
  return zeta_em(s, p).value;
}

// log xi(u) with xi(u) = pi^{-u/2} Gamma(u/2) zeta(u), reflected to Re u >= 1/2.
template <class R>
C<R> log_completed_zeta(C<R> u) {
  using std::log;
  if (u.real() < R(0.5)) u = C<R>(R(1) - u.real(), -u.imag());
  const R lpi = log(RealTraits<R>::pi());
  C<R> half(u.real() / 2, u.imag() / 2);
  return C<R>(-half.real() * lpi, -half.imag() * lpi) + log_gamma(half) + clog(zeta_full(u));
}

}  // namespace eisen::detail
