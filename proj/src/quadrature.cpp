#include "eisen/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace eisen {

namespace {

// One 21-point Gauss-Kronrod panel with the embedded 10-point Gauss error.
// (Boost's adaptive driver is not used: in 1.74 it compares an unscaled
// error against a scaled estimate, so narrow panels are never accepted.)
QuadResult gk21(const ComplexIntegrand& f, double a, double b) {
  using K = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& x = K::abscissa();
  const auto& wk = K::weights();
  const auto& wg = G::weights();
  const double mid = (a + b) / 2, half = (b - a) / 2;
  cplx f0 = f(mid);
  cplx rk = f0 * wk[0];
  cplx rg = 0.0;
  double l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    cplx fp = f(mid + half * x[i]);
    cplx fm = f(mid - half * x[i]);
    rk += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 1) rg += (fp + fm) * wg[i / 2];  // Gauss nodes sit at odd indices
  }
  QuadResult r;
  r.value = rk * half;
  r.abs_err = std::max(std::abs(rk - rg) * std::abs(half), std::abs(r.value) * 2.0 * DBL_EPSILON);
  r.l1 = l1 * std::abs(half);
  return r;
}

QuadResult adaptive(const ComplexIntegrand& f, double a, double b, double rel_tol, unsigned depth) {
  QuadResult r = gk21(f, a, b);
  if (depth == 0 || r.abs_err <= rel_tol * r.l1) return r;
  const double mid = (a + b) / 2;
  QuadResult left = adaptive(f, a, mid, rel_tol, depth - 1);
  QuadResult right = adaptive(f, mid, b, rel_tol, depth - 1);
  return {left.value + right.value, left.abs_err + right.abs_err, left.l1 + right.l1};
}

}  // namespace

QuadResult integrate_gk(const ComplexIntegrand& f, double a, double b, double rel_tol, unsigned max_depth) {
  if (a == b) return {};
  return adaptive(f, a, b, rel_tol, max_depth);
}

QuadResult integrate_panels(const ComplexIntegrand& f, double a, double b, double width, double rel_tol,
                            unsigned max_depth) {
  QuadResult total;
  if (a == b) return total;
  int n = static_cast<int>(std::ceil(std::abs(b - a) / width));
  if (n < 1) n = 1;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    double lo = a + i * h;
    double hi = (i + 1 == n) ? b : a + (i + 1) * h;
    QuadResult p = integrate_gk(f, lo, hi, rel_tol, max_depth);
    total.value += p.value;
    total.abs_err += p.abs_err;
    total.l1 += p.l1;
  }
  return total;
}

namespace {

template <class F, class V>
V gl_composite(const F& f, double a, double b, int panels) {
  using GL = boost::math::quadrature::gauss<double, 16>;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  V total{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    double half = h / 2;
    V acc{};
    // boost stores the non-negative half of a symmetric rule
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        acc += w[i] * f(mid);
      } else {
        acc += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
      }
    }
    total += acc * half;
  }
  return total;
}

}  // namespace

cplx gauss_legendre_composite(const ComplexIntegrand& f, double a, double b, int panels) {
  return gl_composite<ComplexIntegrand, cplx>(f, a, b, panels);
}

double gauss_legendre_composite(const RealIntegrand& f, double a, double b, int panels) {
  return gl_composite<RealIntegrand, double>(f, a, b, panels);
}

}  // namespace eisen
