#pragma once

// Complex Gamma, Riemann zeta, the completed zeta function and the scattering
// coefficient of the modular surface.
//
// All routines work in double precision by default. Where a requested
// tolerance cannot be met at 53 bits the evaluation is repeated in MPFR
// arithmetic and rounded back.

#include "eisen/types.hpp"

namespace eisen {

/// Continuous-branch log Gamma (imaginary part accumulates, no 2 pi wrapping
/// on the right half plane). Throws PoleError near non-positive integers.
cplx log_gamma(cplx s);

/// log sin(pi z), stable for large |Im z|.
cplx log_sin_pi(cplx z);

EvalResult complex_gamma(const SpectralPoint& s, double tol);

/// Riemann zeta by Euler-Maclaurin, functional equation for Re s < 0.
/// Supported for |Im s| <= kZetaMaxImag.
EvalResult zeta(const SpectralPoint& s, double tol);
inline constexpr double kZetaMaxImag = 5000.0;

/// Fast path without error bookkeeping; used in inner loops.
cplx zeta_value(cplx s);

/// zeta'(s) by a Cauchy integral over a small circle.
cplx zeta_derivative(cplx s);

/// xi(u) = pi^{-u/2} Gamma(u/2) zeta(u), symmetric under u -> 1 - u.
EvalResult completed_zeta(const SpectralPoint& u, double tol);

/// log xi(u) (any branch), usable where xi itself under/overflows.
cplx log_completed_zeta(cplx u);

/// xi(u) * exp(pi |Im u| / 4): removes the exponential decay of the Gamma
/// factor so the value stays O(poly |u|).
cplx completed_zeta_scaled(cplx u);

/// xi(u) evaluated entirely in MPFR arithmetic with the given number of
/// decimal digits, rounded to double. Used to cross-check the double path.
cplx completed_zeta_extended(cplx u, int digits);

/// phi(s) = xi(2 - 2s) / xi(2s).
EvalResult scattering_phi(const SpectralPoint& s, double tol);

}  // namespace eisen
