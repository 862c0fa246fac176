#pragma once

// The real-analytic Eisenstein series E(z, s) for PSL2(Z): Fourier and
// coset-sum evaluators, the non-constant part F(z, s), reduction to the
// standard fundamental domain, and automorphy diagnostics.

#include "eisen/kbessel.hpp"
#include "eisen/types.hpp"

#include <vector>

namespace eisen {

class UpperHalfPoint {
 public:
  /// Rejects y <= 1e-6 and non-finite input with DomainError.
  UpperHalfPoint(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  cplx z() const noexcept { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

/// Integer matrix (a b; c d) with ad - bc = 1.
struct Sl2z {
  long long a = 1, b = 0, c = 0, d = 1;

  UpperHalfPoint apply(const UpperHalfPoint& z) const;
  Sl2z operator*(const Sl2z& o) const;
};

struct Reduction {
  UpperHalfPoint point;
  Sl2z gamma;  // point = gamma z
};

/// Moves z into |Re z| <= 1/2, |z| >= 1 with Re z in [-1/2, 1/2) and Re z >= 0
/// on the unit circle (the corner -1/2 + i sqrt(3)/2 keeps Re z = -1/2).
Reduction reduce_to_fundamental_domain(const UpperHalfPoint& z);

struct EisensteinValue {
  cplx value;
  double abs_err = 0.0;
  int n_terms_used = 0;
  cplx constant_term;  // y^s + phi(s) y^{1-s}
};

struct FourierOptions {
  double tol = 1e-10;              // relative tolerance handed to each Bessel term
  BesselProvider bessel = nullptr;  // defaults to k_bessel
};

/// Number of Fourier modes kept at height y for Im s = t.
int fourier_cutoff(double t, double y);

/// Fourier expansion; requires 1/2 <= Re s <= 5/2.
EisensteinValue eisenstein_fourier(const UpperHalfPoint& z, const SpectralPoint& s, const FourierOptions& opt = {});
EisensteinValue eisenstein_fourier(const UpperHalfPoint& z, const SpectralPoint& s, double tol);

/// F(z, s) = E(z, s) - y^s - phi(s) y^{1-s}, summed directly from the
/// non-constant modes.
EvalResult remainder_F(const UpperHalfPoint& z, const SpectralPoint& s, const FourierOptions& opt = {});
EvalResult remainder_F(const UpperHalfPoint& z, const SpectralPoint& s, double tol);

/// E(z, 1/2 + iT) with real divisor sums and real Bessel values; 1 <= T <= 2000.
EisensteinValue e_critical(const UpperHalfPoint& z, double T, const FourierOptions& opt = {});
EisensteinValue e_critical(const UpperHalfPoint& z, double T, double tol);

/// e_critical at (x_k, y) for every x_k, sharing the Bessel values of the row.
std::vector<EisensteinValue> e_critical_row(const std::vector<double>& xs, double y, double T,
                                            const FourierOptions& opt = {});

/// |xi(2s) E(z,s) - xi(2-2s) E(z,1-s)| / (|xi(2s) E(z,s)| + 1e-300), with both
/// series values taken from the Fourier evaluator. Needs 1/2 <= Re s <= 1.
double functional_equation_residual(const UpperHalfPoint& z, const SpectralPoint& s, const FourierOptions& opt = {});

/// Coset sum over coprime (c, d) with c <= radius, for Re s >= 3/2.
///
/// For each c the residue classes d = a mod c are summed over |m| <= M with
/// the two tails in m taken from Hurwitz zeta expansions. The classes with
/// c > radius enter through their mean value plus the first harmonic, whose
/// coefficient over c is the Moebius function; higher harmonics are bounded
/// and reported in abs_err. Throws ConvergenceError if abs_err / |value|
/// exceeds tol.
EvalResult eisenstein_direct(const UpperHalfPoint& z, const SpectralPoint& s, int radius = 600, double tol = 1e-7);

}  // namespace eisen
