#include "eisen/gamma_zeta.hpp"

#include "eisen/errors.hpp"
#include "special_impl.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

namespace eisen {

namespace {

using LD = long double;
using CL = std::complex<LD>;

constexpr double kPoleGuard = 1e-8;
constexpr double kPi = 3.14159265358979323846;
// Relative rounding error of the final conversion to double.
constexpr double kRound = DBL_EPSILON;
// Relative error of a long double value obtained as exp of a log of size L.
double ld_exp_err(double log_size) { return LDBL_EPSILON * (std::abs(log_size) + 32.0); }

CL to_ld(cplx z) { return {static_cast<LD>(z.real()), static_cast<LD>(z.imag())}; }
cplx to_d(const CL& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }
cplx to_d(const MpComplex& z) { return {z.real().convert_to<double>(), z.imag().convert_to<double>()}; }
MpComplex to_mp(cplx z) { return {MpReal(z.real()), MpReal(z.imag())}; }

bool near_nonpositive_integer(cplx z) {
  double n = std::round(z.real());
  return n <= 0.0 && std::abs(z - cplx(n, 0.0)) < kPoleGuard;
}

int digits_for(double magnitude, double tol) {
  double need = std::log10(std::max(magnitude, 1e-300) / tol) + 12.0;
  return static_cast<int>(std::clamp(need, 30.0, 500.0));
}

void check_zeta_range(cplx s) {
  if (std::abs(s.imag()) > kZetaMaxImag)
    throw RangeError("zeta: |Im s| = " + std::to_string(std::abs(s.imag())) + " exceeds supported range");
}

struct ZetaLd {
  CL value;
  double abs_err;
  Method method;
};

// Long double Euler-Maclaurin or functional equation with an error estimate.
ZetaLd zeta_ld(cplx s, int bernoulli_terms) {
  if (s.real() < 0.0) {
    CL v = detail::zeta_full(to_ld(s));
    double mag = static_cast<double>(std::abs(v));
    // log-size of the factors: Gamma(1 - s) and 2^s pi^{s-1}
    double lsize = std::abs(to_d(detail::log_gamma(CL(1) - to_ld(s)))) + 2.0 * std::abs(s);
    return {v, mag * (ld_exp_err(lsize) + 64.0 * static_cast<double>(LDBL_EPSILON)), Method::functional_equation};
  }
  CL sl = to_ld(s);
  detail::EmParams p{detail::zeta_em_cutoff(sl, 16), bernoulli_terms};
  auto r = detail::zeta_em(sl, p);
  double n_log = std::log(static_cast<double>(p.n_terms));
  double round = static_cast<double>(r.abs_sum) * LDBL_EPSILON * (4.0 + std::abs(s) * n_log);
  return {r.value, static_cast<double>(r.truncation) + round, Method::euler_maclaurin};
}

cplx zeta_mp(cplx s, int digits) {
  PrecisionScope scope(static_cast<unsigned>(digits));
  return to_d(detail::zeta_full(to_mp(s)));
}

MpComplex log_xi_mp(cplx u) { return detail::log_completed_zeta(to_mp(u)); }

struct LogXi {
  CL value;
  double rel_err;  // absolute error in log xi == relative error in xi
};

LogXi log_xi_ld(cplx u) {
  if (u.real() < 0.5) u = cplx(1.0 - u.real(), -u.imag());
  ZetaLd z = zeta_ld(u, 10);
  CL half = to_ld(u) / LD(2);
  CL lg = detail::log_gamma(half);
  CL l = -half * std::log(detail::RealTraits<LD>::pi()) + lg + std::log(z.value);
  double zabs = static_cast<double>(std::abs(z.value));
  double zrel = zabs > 0 ? z.abs_err / zabs : std::numeric_limits<double>::infinity();
  return {l, zrel + ld_exp_err(static_cast<double>(std::abs(lg)) + std::abs(u))};
}

}  // namespace

cplx log_gamma(cplx s) {
  if (near_nonpositive_integer(s)) throw PoleError("Gamma pole at non-positive integer");
  return to_d(detail::log_gamma(to_ld(s)));
}

cplx log_sin_pi(cplx z) { return to_d(detail::log_sin_pi(to_ld(z))); }

EvalResult complex_gamma(const SpectralPoint& sp, double tol) {
  cplx s = sp.value();
  if (near_nonpositive_integer(s)) throw PoleError("Gamma pole at non-positive integer");
  CL lg = detail::log_gamma(to_ld(s));
  cplx v = to_d(std::exp(lg));
  double mag = std::abs(v);
  double err = mag * (kRound + ld_exp_err(static_cast<double>(std::abs(lg))));
  if (err <= tol && std::isfinite(mag)) return {v, err, Method::stirling};

  PrecisionScope scope(static_cast<unsigned>(digits_for(mag, tol)));
  MpComplex lmp = detail::log_gamma(to_mp(s));
  cplx vm = to_d(detail::cexp(lmp));
  double errm = std::abs(vm) * kRound;
  if (!(errm <= tol) || !std::isfinite(std::abs(vm)))
    throw PrecisionError("Gamma: tolerance unreachable in double output");
  return {vm, errm, Method::extended_precision};
}

EvalResult zeta(const SpectralPoint& sp, double tol) {
  cplx s = sp.value();
  check_zeta_range(s);
  if (std::abs(s - 1.0) < kPoleGuard) throw PoleError("zeta pole at s = 1");
  ZetaLd z = zeta_ld(s, 10);
  double err = z.abs_err;
  if (tol < 1e-12 && z.method == Method::euler_maclaurin) {
    ZetaLd z14 = zeta_ld(s, 14);
    err = std::max(z14.abs_err, static_cast<double>(std::abs(z14.value - z.value)));
    z = z14;
  }
  cplx v = to_d(z.value);
  err += std::abs(v) * kRound;
  if (err <= tol) return {v, err, z.method};

  cplx vm = zeta_mp(s, digits_for(std::abs(v), tol));
  double errm = std::abs(vm) * kRound;
  if (!(errm <= tol)) throw PrecisionError("zeta: tolerance unreachable in double output");
  return {vm, errm, Method::extended_precision};
}

cplx zeta_value(cplx s) {
  check_zeta_range(s);
  if (std::abs(s - 1.0) < kPoleGuard) throw PoleError("zeta pole at s = 1");
  return to_d(zeta_ld(s, 10).value);
}

cplx zeta_derivative(cplx s) {
  const double r = std::min(0.1, std::abs(s - 1.0) / 4.0);
  if (r < kPoleGuard) throw PoleError("zeta derivative too close to s = 1");
  constexpr int M = 16;
  const double pi = detail::RealTraits<double>::pi();
  cplx acc = 0.0;
  for (int k = 0; k < M; ++k) {
    cplx e = std::polar(1.0, 2.0 * pi * (k + 0.5) / M);
    acc += zeta_value(s + r * e) / e;
  }
  return acc / (double(M) * r);
}

cplx log_completed_zeta(cplx u) {
  if (std::abs(u) < kPoleGuard || std::abs(u - 1.0) < kPoleGuard) throw PoleError("xi pole at u = 0 or 1");
  check_zeta_range(u);
  return to_d(log_xi_ld(u).value);
}

EvalResult completed_zeta(const SpectralPoint& up, double tol) {
  cplx u = up.value();
  if (std::abs(u) < kPoleGuard || std::abs(u - 1.0) < kPoleGuard) throw PoleError("xi pole at u = 0 or 1");
  check_zeta_range(u);
  LogXi l = log_xi_ld(u);
  cplx v = to_d(std::exp(l.value));
  double mag = std::abs(v);
  double err = mag * (kRound + l.rel_err);
  if (err <= tol) return {v, err, Method::euler_maclaurin};

  PrecisionScope scope(static_cast<unsigned>(digits_for(mag, tol)));
  cplx vm = to_d(detail::cexp(log_xi_mp(u)));
  double errm = std::abs(vm) * kRound;
  if (!(errm <= tol)) throw PrecisionError("completed zeta: tolerance unreachable in double output");
  return {vm, errm, Method::extended_precision};
}

cplx completed_zeta_scaled(cplx u) {
  cplx l = log_completed_zeta(u);
  const double pi = detail::RealTraits<double>::pi();
  return std::exp(l + cplx(pi * std::abs(u.imag()) / 4.0, 0.0));
}

cplx completed_zeta_extended(cplx u, int digits) {
  if (std::abs(u) < kPoleGuard || std::abs(u - 1.0) < kPoleGuard) throw PoleError("xi pole at u = 0 or 1");
  PrecisionScope scope(static_cast<unsigned>(std::clamp(digits, 16, 500)));
  return to_d(detail::cexp(log_xi_mp(u)));
}

EvalResult scattering_phi(const SpectralPoint& sp, double tol) {
  cplx s = sp.value();
  cplx num_arg = 2.0 - 2.0 * s;
  cplx den_arg = 2.0 * s;
  for (cplx a : {num_arg, den_arg})
    if (std::abs(a) < kPoleGuard || std::abs(a - 1.0) < kPoleGuard)
      throw PoleError("scattering coefficient at a pole of the completed zeta function");
  check_zeta_range(num_arg);
  LogXi num = log_xi_ld(num_arg);
  LogXi den = log_xi_ld(den_arg);
  // The guard applies to xi(2s) with its Gamma decay removed; the decay
  // itself is harmless because the quotient is formed in logs.
  const double den_scaled = static_cast<double>(den.value.real()) + kPi * std::abs(den_arg.imag()) / 4;
  if (!std::isfinite(den_scaled) || den_scaled < -700.0)
    throw DivisionError("scattering coefficient: denominator below underflow guard");
  cplx v = to_d(std::exp(num.value - den.value));
  double mag = std::abs(v);
  double err = mag * (kRound + num.rel_err + den.rel_err);
  if (err <= tol) return {v, err, Method::euler_maclaurin};

  PrecisionScope scope(static_cast<unsigned>(digits_for(mag, tol)));
  cplx vm = to_d(detail::cexp(log_xi_mp(num_arg) - log_xi_mp(den_arg)));
  double errm = std::abs(vm) * kRound;
  if (!(errm <= tol)) throw PrecisionError("scattering coefficient: tolerance unreachable in double output");
  return {vm, errm, Method::extended_precision};
}

}  // namespace eisen
