#pragma once

#include "eisen/types.hpp"

#include <functional>

namespace eisen {

struct QuadResult {
  cplx value;
  double abs_err = 0.0;
  double l1 = 0.0;  // integral of |f|, the scale for roundoff
};

using ComplexIntegrand = std::function<cplx(double)>;
using RealIntegrand = std::function<double(double)>;

/// Adaptive 21-point Gauss-Kronrod on [a, b].
QuadResult integrate_gk(const ComplexIntegrand& f, double a, double b, double rel_tol, unsigned max_depth = 15);

/// [a, b] cut into panels no wider than `width`, each integrated adaptively.
QuadResult integrate_panels(const ComplexIntegrand& f, double a, double b, double width, double rel_tol,
                            unsigned max_depth = 10);

/// Composite 16-point Gauss-Legendre with `panels` equal panels.
cplx gauss_legendre_composite(const ComplexIntegrand& f, double a, double b, int panels);
double gauss_legendre_composite(const RealIntegrand& f, double a, double b, int panels);

}  // namespace eisen
