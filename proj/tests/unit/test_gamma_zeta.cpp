#include "doctest.h"

#include "eisen/errors.hpp"
#include "eisen/gamma_zeta.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace eisen;
using LD = long double;
using CL = std::complex<LD>;

namespace {

const double kPi = 3.14159265358979323846;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Independent Stirling seed: eight hard-coded Bernoulli corrections at a
// point with |z| >= 10, then the recurrence walks down.
CL stirling_seed(CL z) {
  const LD c[] = {1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680,
                  1.0L / 1188, -691.0L / 360360, 1.0L / 156, -3617.0L / 122400};
  CL r = (z - LD(0.5)) * std::log(z) - z + std::log(2 * LD(kPi)) / LD(2);
  CL inv = LD(1) / z;
  CL p = inv;
  for (LD ci : c) {
    r += ci * p;
    p *= inv * inv;
  }
  return std::exp(r);
}

cplx gamma_by_recurrence(cplx s, int shift) {
  CL z = CL(s.real(), s.imag());
  CL g = stirling_seed(z + LD(shift));
  for (int k = shift - 1; k >= 0; --k) g /= (z + LD(k));
  return {static_cast<double>(g.real()), static_cast<double>(g.imag())};
}

// Borwein's acceleration of the alternating eta series;
// zeta(s) = eta(s) / (1 - 2^{1-s}).
cplx zeta_borwein(cplx s, int n) {
  std::vector<LD> d(n + 1);
  LD acc = 0, term = 1.0L / n;  // n * (n+i-1)! 4^i / ((n-i)! (2i)!) built iteratively
  for (int i = 0; i <= n; ++i) {
    if (i > 0) term *= LD(4) * (n + i - 1) * (n - i + 1) / (LD(2 * i) * (2 * i - 1));
    acc += term * n;
    d[i] = acc;
  }
  CL sl(s.real(), s.imag());
  CL sum = 0;
  for (int k = 0; k < n; ++k) {
    CL pk = std::exp(-sl * std::log(LD(k + 1)));
    LD sign = (k % 2 == 0) ? 1 : -1;
    sum += sign * (d[k] - d[n]) * pk;
  }
  CL eta = -sum / d[n];
  CL z = eta / (LD(1) - std::exp((LD(1) - sl) * std::log(LD(2))));
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

cplx xi_by_parts(cplx u) {
  cplx g = complex_gamma(SpectralPoint(u / 2.0), 1.0).value;
  cplx z = zeta(SpectralPoint(u), 1.0).value;
  return std::pow(kPi, -u / 2.0) * g * z;
}

}  // namespace

TEST_CASE("gamma special values") {
  auto g1 = complex_gamma(SpectralPoint(1, 0), 1e-14);
  CHECK(std::abs(g1.value - 1.0) < 1e-14);
  CHECK(g1.abs_err <= 1e-14);
  auto gh = complex_gamma(SpectralPoint(0.5, 0), 1e-14);
  CHECK(std::abs(gh.value - std::sqrt(kPi)) < 1e-14);
  CHECK(std::abs(complex_gamma(SpectralPoint(5, 0), 1e-10).value - 24.0) < 1e-12);
}

TEST_CASE("gamma at 2+3i agrees with recurrence from a Stirling seed at 10+3i") {
  cplx s(2, 3);
  cplx oracle = gamma_by_recurrence(s, 8);
  cplx got = complex_gamma(SpectralPoint(s), 1e-15).value;
  CHECK(rel(got, oracle) < 1e-13);
  cplx from_below = complex_gamma(SpectralPoint(1, 3), 1e-15).value * cplx(1, 3);
  CHECK(rel(got, from_below) < 1e-13);
}

TEST_CASE("gamma recurrence residual on a random grid") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> U(-35.0, 35.0);
  int tested = 0;
  while (tested < 100) {
    cplx s(U(rng), U(rng));
    if (std::abs(s) > 50.0) continue;
    double n = std::round(s.real());
    if (n <= 0 && std::abs(s - n) < 0.1) continue;
    ++tested;
    cplx g0 = complex_gamma(SpectralPoint(s), 1e300).value;
    cplx g1 = complex_gamma(SpectralPoint(s + 1.0), 1e300).value;
    CHECK(std::abs(g1 - s * g0) / std::abs(g1) < 1e-10);
  }
}

TEST_CASE("gamma reflection and conjugation") {
  for (cplx s : {cplx(0.3, 2.0), cplx(-2.7, 0.4), cplx(0.1, -7.5)}) {
    cplx g = complex_gamma(SpectralPoint(s), 1.0).value;
    cplx gr = complex_gamma(SpectralPoint(1.0 - s), 1.0).value;
    CHECK(rel(g * gr, kPi / std::sin(kPi * s)) < 1e-12);
    cplx gc = complex_gamma(SpectralPoint(std::conj(s)), 1.0).value;
    CHECK(gc == std::conj(g));
  }
}

TEST_CASE("gamma error paths") {
  CHECK_THROWS_AS(complex_gamma(SpectralPoint(0, 0), 1e-10), PoleError);
  CHECK_THROWS_AS(complex_gamma(SpectralPoint(-3, 0), 1e-10), PoleError);
  CHECK_THROWS_AS(complex_gamma(SpectralPoint(0.5, 0), 1e-30), PrecisionError);
  CHECK_THROWS_AS(SpectralPoint(NAN, 0), DomainError);
  CHECK_THROWS_AS(SpectralPoint(0, INFINITY), DomainError);
}

TEST_CASE("zeta special values") {
  CHECK(std::abs(zeta(SpectralPoint(2, 0), 1e-14).value - kPi * kPi / 6) < 1e-14);
  CHECK(std::abs(zeta(SpectralPoint(0, 0), 1e-14).value + 0.5) < 1e-14);
  CHECK(std::abs(zeta(SpectralPoint(-1, 0), 1e-12).value + 1.0 / 12) < 1e-13);
  CHECK(std::abs(zeta(SpectralPoint(-2, 0), 1e-12).value) < 1e-13);
  CHECK(std::abs(zeta(SpectralPoint(4, 0), 1e-14).value - std::pow(kPi, 4) / 90) < 1e-14);
}

TEST_CASE("zeta(1+20i) against the accelerated eta series") {
  cplx s(1, 20);
  cplx oracle = zeta_borwein(s, 90);
  auto got = zeta(SpectralPoint(s), 1e-12);
  CHECK(std::abs(got.value - oracle) < 1e-8);
  CHECK(got.abs_err <= 1e-12);
}

TEST_CASE("zeta across the strip matches the eta oracle") {
  for (cplx s : {cplx(0.5, 14.134725141734693), cplx(0.3, 5.0), cplx(2.5, -9.0), cplx(1.0, 1.0)}) {
    cplx oracle = zeta_borwein(s, 90);
    CHECK(std::abs(zeta(SpectralPoint(s), 1e-12).value - oracle) < 1e-10);
  }
}

TEST_CASE("zeta conjugation, pole and range") {
  cplx s(0.7, 123.4);
  CHECK(zeta(SpectralPoint(std::conj(s)), 1e-10).value == std::conj(zeta(SpectralPoint(s), 1e-10).value));
  CHECK_THROWS_AS(zeta(SpectralPoint(1, 0), 1e-10), PoleError);
  CHECK_THROWS_AS(zeta(SpectralPoint(1, 6000), 1e-10), RangeError);
}

TEST_CASE("zeta derivative at 2") {
  // zeta'(2) = -0.9375482543158437...
  CHECK(std::abs(zeta_derivative(cplx(2, 0)) - (-0.93754825431584375)) < 1e-12);
}

TEST_CASE("completed zeta values and symmetry") {
  CHECK(std::abs(completed_zeta(SpectralPoint(2, 0), 1e-13).value - kPi / 6) < 1e-13);
  cplx u(3, 5);
  cplx left = completed_zeta(SpectralPoint(u), 1e-12).value;
  cplx right = xi_by_parts(1.0 - u);
  CHECK(std::abs(left - right) < 1e-10);
  CHECK_THROWS_AS(completed_zeta(SpectralPoint(1, 0), 1e-10), PoleError);
  CHECK_THROWS_AS(completed_zeta(SpectralPoint(0, 0), 1e-10), PoleError);
}

TEST_CASE("completed zeta at 1+74i matches the doubled-precision run") {
  cplx u(1, 74);
  auto d = completed_zeta(SpectralPoint(u), 1e-25);
  cplx x = completed_zeta_extended(u, 32);
  CHECK(rel(d.value, x) < 1e-12);
}

TEST_CASE("completed zeta functional equation on a grid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-3.0, 4.0), im(-100.0, 100.0);
  for (int i = 0; i < 40; ++i) {
    cplx u(re(rng), im(rng));
    if (std::abs(u) < 0.5 || std::abs(u - 1.0) < 0.5) continue;
    cplx a = xi_by_parts(u);
    cplx b = xi_by_parts(1.0 - u);
    CHECK(rel(a, b) < 1e-9);
    CHECK(rel(completed_zeta(SpectralPoint(u), 1.0).value, b) < 1e-9);
  }
}

TEST_CASE("scattering coefficient is unimodular on the critical line") {
  CHECK(std::abs(std::abs(scattering_phi(SpectralPoint(0.5, 30), 1e-10).value) - 1.0) < 1e-10);
  for (double t = 1.0; t <= 500.0; t *= 1.37) {
    auto p = scattering_phi(SpectralPoint(0.5, t), 1e-10);
    CHECK(std::abs(std::abs(p.value) - 1.0) < 1e-9);
    CHECK(p.abs_err <= 1e-10);
  }
}

TEST_CASE("scattering coefficient decays like |t|^(-1/2) at sigma = 2") {
  double cmax = 0.0, c_last = 0.0;
  for (double t = 1.0; t <= 400.0; t *= 1.5) {
    double c = std::abs(scattering_phi(SpectralPoint(2.0, t), 1e-10).value) * std::sqrt(1.0 + t);
    cmax = std::max(cmax, c);
    c_last = c;
  }
  CHECK(cmax < 10.0);
  CHECK(c_last > 0.1);
  CHECK(std::abs(scattering_phi(SpectralPoint(2, 10), 1e-10).value) <= cmax / std::sqrt(11.0));
}

TEST_CASE("scattering coefficient near t = 0 follows the Laurent expansion") {
  const double gamma_e = 0.57721566490153286;
  const double c0 = (gamma_e - std::log(4 * kPi)) / 2;
  const double t = 1e-3;
  cplx it(0, 2 * t * c0);
  cplx oracle = (-1.0 + it) / (1.0 + it);
  cplx got = scattering_phi(SpectralPoint(0.5, t), 1e-10).value;
  CHECK(std::abs(got - oracle) < 1e-5);
  cplx direct = completed_zeta(SpectralPoint(1.0, -2 * t), 1e-10).value /
                completed_zeta(SpectralPoint(1.0, 2 * t), 1e-10).value;
  CHECK(std::abs(got - direct) < 1e-12);
}
