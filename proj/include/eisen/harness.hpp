#pragma once

// Empirical checks of the bounds around E(z, 1/2 + iT): every "<<" claim is
// turned into a fitted constant, the largest observed/bound ratio on a grid.

#include "eisen/eisenstein.hpp"
#include "eisen/kbessel.hpp"

#include <string>
#include <vector>

namespace eisen {

/// Rectangle [x0, x1] x [y0, y1] sampled on an nx by ny lattice (endpoints
/// included), and the spectral heights to scan.
struct GridSpec {
  double x0 = 0.0, x1 = 0.5;
  double y0 = 1.0, y1 = 2.0;
  int nx = 9, ny = 9;
  std::vector<double> T_list;

  /// DomainError unless y0 >= sqrt(3)/2, x0 <= x1, y0 <= y1 and nx, ny >= 1.
  void validate() const;
  std::vector<double> xs() const;
  std::vector<double> ys() const;
  /// Halves the spacing: 2n - 1 points per axis, so every old point is kept.
  GridSpec refined() const;
};

struct BoundSample {
  double x = 0.0, y = 0.0;  // for the envelope check y carries the Bessel argument u
  double sigma = 0.5;
  double t = 0.0;
  double observed = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct BoundReport {
  std::string name;
  GridSpec grid;
  double fitted_C = 0.0;  // max ratio over the samples
  BoundSample argmax;
  std::vector<BoundSample> samples;
  double quad_rel_err = 0.0;  // doubling estimate, for the quadrature checks
  std::string ratios_path;    // set by write_ratios_csv

  /// Appends a sample and keeps fitted_C and argmax current. Throws
  /// RangeError for a non-finite ratio.
  void add(const BoundSample& s);
};

/// Writes one CSV row per sample and records the path in the report.
/// ResourceError if the file cannot be written.
void write_ratios_csv(BoundReport& report, const std::string& path);

struct Lemma1Report {
  BoundReport e;  // |E| / (sqrt y + (t/y)^{1/2} log^2 t)
  BoundReport f;  // |F| / ((t/y)^{1/2} log^2 t + sqrt y t^{-1/3})
};

/// Needs every T >= 2 and y0 >= 1.
Lemma1Report lemma1_check(const GridSpec& grid, const FourierOptions& opt = {});

struct Lemma2Spec {
  std::vector<double> xs{0.0, 0.25, 0.5};
  // Re s > 1: |F| y^{sigma - 1}
  std::vector<double> decay_sigmas{1.5, 2.0, 2.5};
  std::vector<double> decay_ts{0.0, 5.0, 20.0};
  std::vector<double> decay_ys{2.0, 3.5, 6.0, 10.0, 18.0, 30.0, 50.0};
  // 1/2 <= Re s <= 1: |F| / ((1 + |t|)^{1.1} y^{-sigma})
  std::vector<double> strip_sigmas{0.5, 0.75, 1.0};
  std::vector<double> strip_ts{10.0, 40.0, 100.0};
  std::vector<double> strip_ys{1.0, 2.0, 4.0};
  // y = factor * t on the critical line: |F| against 1e-20
  std::vector<double> beyond_ts{10.0, 20.0, 50.0};
  std::vector<double> beyond_factors{3.0, 5.0, 10.0};
};

struct Lemma2Report {
  BoundReport decay;
  BoundReport strip;
  BoundReport beyond;       // ratio |F| / 1e-20
  BoundReport bessel;       // |K_{sigma+it}(u) / Gamma(1/2 + sigma + it)| / (u^{-sigma} (t/u)^{1.1})
  bool beyond_ok = false;   // every beyond sample below 1e-20
};

Lemma2Report lemma2_check(const Lemma2Spec& spec = {}, const FourierOptions& opt = {});

struct PointwiseReport {
  BoundReport e;  // |E(z, 1/2 + iT)|^2 against y log^6 T + log^5 T int |E|^2
  BoundReport f;  // |F|^2 against log^5 T / y + log^5 T int |F|^2
  int quad_points = 0;  // nodes in the accepted rule
};

/// The r-integral over |r| <= 4 log T uses nested Clenshaw-Curtis rules,
/// doubled from quad_points until two successive rules agree to 1e-3.
/// Needs T >= 10 and quad_points >= 64; QuadratureError past 16384 nodes.
PointwiseReport pointwise_integral_check(const UpperHalfPoint& z, double T, int quad_points = 128,
                                         const FourierOptions& opt = {});

/// The Dirichlet polynomial sum_{N < n < 2N} alpha_n tau_{it}(n) with
/// alpha_n = w(n/N) tau_{i(T + 1/2)}(n), weighted by |E_t(z)|^2 and
/// integrated over [T, T + 1]. The bound is evaluated with length 2N:
/// T sum |alpha|^2 + T^{1/2} (2N + (2N)^{1/2} y) (sum |alpha|)^2.
BoundReport is_a12_check(const UpperHalfPoint& z, double T, double N, const FourierOptions& opt = {});

enum class BudgetRegime { amplified_small_y, amplified_medium_y, fourier_large_y };

std::string to_string(BudgetRegime r);

struct Budget {
  BudgetRegime regime;
  double N = 0.0;  // amplifier length; 0 in the Fourier regime
  double predicted = 0.0;
};

/// y <= T^{1/8}: N = T^{1/4}, bound T^{3/8}. y <= T^{1/6}: N = y^{-2/3} T^{1/3},
/// bound y^{1/3} T^{1/3}. Otherwise sqrt y + (T/y)^{1/2} log^2 T.
Budget budget(double T, double y);

struct SupnormRow {
  double T = 0.0;
  double M = 0.0;          // after polishing
  double grid_max = 0.0;   // lattice maximum
  double argmax_x = 0.0, argmax_y = 0.0;
  double ratio_T38 = 0.0;  // M / T^{3/8}
};

struct SupnormScan {
  std::vector<SupnormRow> rows;  // sorted by T
  double fitted_exponent = 0.0;  // least-squares slope of log M against log T; NaN for one height
};

/// max |E(z, 1/2 + iT)| over the lattice, then a compass search inside the
/// rectangle from each of the five largest lattice peaks.
SupnormScan supnorm_scan(const GridSpec& grid, const FourierOptions& opt = {});

/// Least-squares slope of log v against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& v);

struct EnvelopeGrid {
  double t0 = 20.0, t1 = 500.0;
  int nt = 9;          // geometric in t
  int nu = 33;         // per t, uniform in u / t
  double u_lo = 0.05;  // u / t range
  double u_hi = 1.4;

  EnvelopeGrid refined() const;
};

/// cosh(pi t / 2) |K_{it}(u)| against balogh_envelope. Samples carry the
/// regime code (0 oscillatory, 1 transition, 2 decay) in x.
BoundReport envelope_check(const EnvelopeGrid& grid, const EnvelopeConstants& k = {},
                           const BesselProvider& bessel = nullptr, double tol = 1e-10);

}  // namespace eisen
