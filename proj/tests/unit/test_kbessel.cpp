#include "doctest.h"

#include "eisen/errors.hpp"
#include "eisen/kbessel.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace eisen;
using LD = long double;

namespace {

const double kPi = 3.14159265358979323846;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Real-line oracle: e^{pi t/2} int_0^inf e^{-u cosh v} cosh(nu v) dv by the
// trapezoidal rule, which converges geometrically for this analytic,
// doubly-exponentially decaying integrand. Long double absorbs the
// e^{-pi t/2} cancellation for moderate t.
cplx real_line_oracle(double sigma, double t, double u) {
  const LD h = 1.0L / 512;
  std::complex<LD> nu(sigma, t);
  std::complex<LD> acc = 0.5L * std::exp(-static_cast<LD>(u));
  for (int k = 1;; ++k) {
    LD v = k * h;
    LD damp = std::exp(-static_cast<LD>(u) * std::cosh(v));
    if (damp < 1e-40L && v > 1) break;
    acc += damp * std::cosh(nu * v);
  }
  acc *= h * std::exp(static_cast<LD>(kPi) * t / 2);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace

TEST_CASE("closed form and integer order values") {
  auto half = k_series(BesselOrder(0.5, 0), 2.0, 1e-12);
  CHECK(std::abs(half.scaled_value.real() - std::sqrt(kPi / 4) * std::exp(-2.0)) < 1e-13);
  CHECK(std::abs(half.scaled_value.real() - 0.1199377) < 1e-7);

  cplx k0_1 = real_line_oracle(0, 0, 1.0);
  CHECK(std::abs(k0_1.real() - 0.4210244382) < 1e-10);
  CHECK(std::abs(k_series(BesselOrder(0, 0), 1.0, 1e-12).scaled_value - k0_1) < 1e-12);
  CHECK(std::abs(k_mellin_barnes(BesselOrder(0, 0), 1.0, 1e-10).scaled_value - k0_1) < 1e-10);

  cplx k0_5 = real_line_oracle(0, 0, 5.0);
  CHECK(std::abs(k0_5.real() - 3.6911e-3) < 1e-7);
  CHECK(rel(k_quadrature(BesselOrder(0, 0), 5.0, 1e-12).scaled_value, k0_5) < 1e-12);
  CHECK(rel(k_series(BesselOrder(1, 0), 2.5, 1e-12).scaled_value, real_line_oracle(1, 0, 2.5)) < 1e-12);
  CHECK(rel(k_series(BesselOrder(2, 0), 0.7, 1e-12).scaled_value, real_line_oracle(2, 0, 0.7)) < 1e-12);
}

TEST_CASE("complex orders against the real-line oracle") {
  struct Case {
    double sigma, t, u;
  };
  for (Case c : {Case{0, 10, 1}, Case{0.5, 10, 5}, Case{1, 5, 9}, Case{1.8, 1.7, 7}, Case{0, 3, 0.2}}) {
    cplx oracle = real_line_oracle(c.sigma, c.t, c.u);
    CAPTURE(c.t);
    CAPTURE(c.u);
    CHECK(rel(k_series(BesselOrder(c.sigma, c.t), c.u, 1e-12).scaled_value, oracle) < 1e-10);
    CHECK(rel(k_quadrature(BesselOrder(c.sigma, c.t), c.u, 1e-11).scaled_value, oracle) < 1e-10);
    CHECK(rel(k_bessel(BesselOrder(c.sigma, c.t), c.u, 1e-11).scaled_value, oracle) < 1e-10);
  }
}

TEST_CASE("cross-method agreement") {
  auto s = k_series(BesselOrder(0, 10), 1.0, 1e-12);
  auto q = k_quadrature(BesselOrder(0, 10), 1.0, 1e-12);
  CHECK(rel(s.scaled_value, q.scaled_value) < 1e-10);

  auto m = k_mellin_barnes(BesselOrder(0.5, 10), 5.0, 1e-10);
  auto q2 = k_quadrature(BesselOrder(0.5, 10), 5.0, 1e-12);
  CHECK(rel(m.scaled_value, q2.scaled_value) < 1e-8);

  for (double t : {1.0, 10.0, 50.0, 100.0}) {
    for (double f : {0.25, 0.35, 0.5}) {
      double u = std::max(f * t, 0.3);
      auto a = k_series(BesselOrder(0, t), u, 1e-11);
      auto b = k_quadrature(BesselOrder(0, t), u, 1e-11);
      auto c = k_mellin_barnes(BesselOrder(0, t), u, 1e-10);
      CAPTURE(t);
      CAPTURE(u);
      CHECK(rel(a.scaled_value, b.scaled_value) < 1e-8);
      CHECK(rel(c.scaled_value, b.scaled_value) < 1e-8);
    }
  }
}

TEST_CASE("Mellin-Barnes contour shift invariance") {
  for (BesselOrder nu : {BesselOrder(0, 10), BesselOrder(0.5, 10)}) {
    auto a = k_mellin_barnes(nu, 5.0, 1e-11, 1.0);
    auto b = k_mellin_barnes(nu, 5.0, 1e-11, 1.5);
    CHECK(rel(a.scaled_value, b.scaled_value) < 1e-9);
  }
  CHECK_THROWS_AS(k_mellin_barnes(BesselOrder(1.5, 3), 2.0, 1e-10, 1.0), DomainError);
  CHECK_THROWS_AS(k_mellin_barnes(BesselOrder(0, 5), 100.0, 1e-10), ConvergenceError);
}

TEST_CASE("regime values from the envelope shape") {
  auto tr = k_quadrature(BesselOrder(0, 50), 50.0, 1e-12);
  double C = std::abs(tr.scaled_value) * std::cbrt(50.0);
  MESSAGE("transition constant at t = u = 50: " << C);
  CHECK(C < 3.0);
  CHECK(tr.regime == Regime::transition);

  auto dec = k_quadrature(BesselOrder(0, 20), 100.0, 1e-12);
  CHECK(std::abs(dec.scaled_value) < 1e-30);
  CHECK(std::abs(dec.scaled_value) > 0.0);
  CHECK(dec.regime == Regime::decay);
}

TEST_CASE("dispatcher regression pins") {
  // pinned after series/quadrature agreement
  CHECK(std::abs(k_bessel(BesselOrder(0, 50), 12.5, 1e-12).scaled_value.real() - (-0.3042509023809206937)) < 1e-12);
  CHECK(rel(k_bessel(BesselOrder(0, 200), 60.0, 1e-11).scaled_value, cplx(0.10140264729451046053, 0)) < 1e-11);
  CHECK(rel(k_bessel(BesselOrder(0, 500), 600.0, 1e-11).scaled_value, cplx(9.500646112367878223e-19, 0)) < 1e-11);
}

TEST_CASE("order symmetry and canonical form") {
  BesselOrder a(0.5, -10), b(-0.5, 10);
  CHECK(a.sigma() == -0.5);
  CHECK(a.t() == 10.0);
  CHECK(k_bessel(b, 3.0, 1e-12).scaled_value == k_bessel(BesselOrder(cplx(-0.5, 10)), 3.0, 1e-12).scaled_value);
  // the symmetry is also visible without canonicalization: sigma -> -sigma at t = 0
  auto p = k_series(BesselOrder(0.7, 0), 1.3, 1e-12);
  auto n = k_series(BesselOrder(-0.7, 0), 1.3, 1e-12);
  CHECK(rel(p.scaled_value, n.scaled_value) < 1e-12);
  CHECK_THROWS_AS(BesselOrder(2.5, 0), DomainError);
  CHECK_THROWS_AS(k_bessel(BesselOrder(0, 2500), 10.0, 1e-10), RangeError);
  CHECK_THROWS_AS(k_bessel(BesselOrder(0, 5), 0.0, 1e-10), DomainError);
}

TEST_CASE("realness for imaginary order") {
  for (double t : {1.0, 7.0, 30.0, 120.0, 500.0}) {
    for (double f : {0.1, 0.4, 0.8, 1.0, 1.3, 2.0}) {
      double u = f * t;
      auto v = k_bessel(BesselOrder(0, t), u, 1e-10);
      CAPTURE(t);
      CAPTURE(u);
      CHECK(std::abs(v.scaled_value.imag()) <= 1e3 * v.abs_err);
    }
  }
}

TEST_CASE("positivity for real order") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> S(0.0, 2.0), U(0.05, 40.0);
  for (int i = 0; i < 40; ++i) {
    double s = S(rng), u = U(rng);
    CHECK(k_bessel(BesselOrder(s, 0), u, 1e-10).scaled_value.real() > 0.0);
  }
}

TEST_CASE("series escalates precision near an integer order") {
  auto v = k_series(BesselOrder(0, 1e-9), 1.0, 1e-10);
  CHECK(std::abs(v.scaled_value - real_line_oracle(0, 0, 1.0)) < 1e-9);
  auto w = k_series(BesselOrder(0, 400), 200.0, 1e-10);
  CHECK(rel(w.scaled_value, k_quadrature(BesselOrder(0, 400), 200.0, 1e-11).scaled_value) < 1e-9);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(100, 50) == Regime::oscillatory);
  CHECK(classify_regime(100, 100) == Regime::transition);
  CHECK(classify_regime(100, 113) == Regime::transition);
  CHECK(classify_regime(100, 115) == Regime::decay);
}

TEST_CASE("envelope branches") {
  auto o = balogh_envelope(100, 50);
  CHECK(o.regime == Regime::oscillatory);
  CHECK(std::abs(o.value - 0.1189) < 1e-4);
  auto tr = balogh_envelope(100, 100);
  CHECK(tr.regime == Regime::transition);
  CHECK(std::abs(tr.value - 0.2154) < 1e-4);
  EnvelopeConstants two_thirds{3.0, 2.0 / 3.0};
  auto d = balogh_envelope(100, 200, two_thirds);
  double x = 100.0 / std::cbrt(100.0);
  double expect = std::pow(200.0, -0.25) * std::pow(100.0, -0.25) * std::exp(-2.0 / 3.0 * std::pow(2.0, 1.5) * std::pow(x, 1.5));
  CHECK(d.regime == Regime::decay);
  CHECK(d.value == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(balogh_envelope(0.5, 1.0), DomainError);
}

TEST_CASE("default decay constant dominates the calibration grid") {
  EnvelopeConstants k;
  for (double t : {20.0, 50.0, 100.0}) {
    for (double step = 3.25; step <= 12.0; step += 0.25) {
      double u = t + step * std::cbrt(t);
      auto v = k_bessel(BesselOrder(0, t), u, 1e-10);
      CAPTURE(t);
      CAPTURE(u);
      CHECK(cosh_normalized_abs(v, t) <= balogh_envelope(t, u, k).value);
    }
  }
}
