// Acceptance run: criteria 1-10 against a fresh Bessel cache, then again
// against the warm cache, with criterion 11 comparing the two passes bit for
// bit. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include "eisen/amplifier.hpp"
#include "eisen/arithmetic.hpp"
#include "eisen/cache.hpp"
#include "eisen/eisenstein.hpp"
#include "eisen/errors.hpp"
#include "eisen/harness.hpp"
#include "eisen/kbessel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace eisen;
namespace fs = std::filesystem;

namespace {

const double kPi = 3.14159265358979323846;

// Pinned tolerances and limits.
constexpr double kCrossEvalTol = 1e-7;
constexpr double kAutomorphyTol = 1e-8;
constexpr double kBesselAgreeTol = 1e-8;
constexpr double kBesselClosedTol = 1e-9;
constexpr double kK0At1 = 0.4210244382;
constexpr double kEnvelopeDrift = 0.20;
constexpr double kRamanujanTol = 1e-4;
constexpr double kHalvingLo = 2.0 * 0.9, kHalvingHi = 2.0 * 1.1;
constexpr double kAmplifierBand = 0.25;
constexpr double kSuperdecay = 1e-20;
constexpr double kPointwiseNoise = 0.30;
constexpr double kQuadConsistency = 0.01;
constexpr double kIsA12Slope = 0.2;
constexpr double kSupExponent = 0.5;
constexpr double kSupRefine = 0.05;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<double> digest;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0: no runtime limit
  std::function<Outcome()> run;
};

// Providers for one pass; every Bessel value is routed through the cache.
struct Context {
  FourierOptions opt;
  BesselProvider series, quadrature, mellin_barnes, dispatch;
};

Context make_context(BesselCache& cache) {
  Context c;
  c.dispatch = cache.provider(nullptr, "k_bessel");
  c.series = cache.provider([](const BesselOrder& nu, double u, double tol) { return k_series(nu, u, tol); },
                            "k_series");
  c.quadrature = cache.provider(k_quadrature, "k_quadrature");
  c.mellin_barnes = cache.provider(
      [](const BesselOrder& nu, double u, double tol) { return k_mellin_barnes(nu, u, tol); }, "k_mellin_barnes");
  c.opt.bessel = c.dispatch;
  c.opt.tol = 1e-10;
  return c;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

void push(std::vector<double>& d, cplx v) {
  d.push_back(v.real());
  d.push_back(v.imag());
}

// Uniform draw from the truncated fundamental domain |x| <= 1/2, |z| >= 1, y <= ymax.
UpperHalfPoint random_reduced(std::mt19937_64& rng, double ymax) {
  std::uniform_real_distribution<double> X(-0.5, 0.5), Y(std::sqrt(3.0) / 2, ymax);
  for (;;) {
    double x = X(rng), y = Y(rng);
    if (x * x + y * y >= 1.0) return UpperHalfPoint(x, y);
  }
}

Outcome c1_cross_evaluator(const Context& ctx) {
  Outcome o;
  std::mt19937_64 rng(20240601);
  double worst = 0;
  for (cplx s : {cplx(2, 0), cplx(2.3, 1.7), cplx(1.5, 5)}) {
    for (int i = 0; i < 20; ++i) {
      UpperHalfPoint z = random_reduced(rng, 3.0);
      cplx d = eisenstein_direct(z, SpectralPoint(s)).value;
      cplx f = eisenstein_fourier(z, SpectralPoint(s), ctx.opt).value;
      worst = std::max(worst, rel(d, f));
      push(o.digest, d);
      push(o.digest, f);
    }
  }
  o.pass = worst < kCrossEvalTol;
  o.detail = "max rel diff " + num(worst);
  o.digest.push_back(worst);
  return o;
}

Outcome c2_automorphy(const Context& ctx) {
  Outcome o;
  std::mt19937_64 rng(20240602);
  double worst_t = 0, worst_s = 0, worst_fe = 0;
  for (cplx s : {cplx(0.6, 5), cplx(0.75, 20)}) {
    for (int i = 0; i < 50; ++i) {
      UpperHalfPoint z = random_reduced(rng, 2.5);
      const SpectralPoint sp(s);
      cplx e = eisenstein_fourier(z, sp, ctx.opt).value;
      cplx et = eisenstein_fourier(UpperHalfPoint(z.x() + 1, z.y()), sp, ctx.opt).value;
      cplx w = -1.0 / z.z();
      cplx es = eisenstein_fourier(UpperHalfPoint(w.real(), w.imag()), sp, ctx.opt).value;
      double fe = functional_equation_residual(z, sp, ctx.opt);
      worst_t = std::max(worst_t, rel(et, e));
      worst_s = std::max(worst_s, rel(es, e));
      worst_fe = std::max(worst_fe, fe);
      push(o.digest, e);
      push(o.digest, et);
      push(o.digest, es);
      o.digest.push_back(fe);
    }
  }
  o.pass = worst_t < kAutomorphyTol && worst_s < kAutomorphyTol && worst_fe < kAutomorphyTol;
  o.detail = "z+1 " + num(worst_t) + ", -1/z " + num(worst_s) + ", functional eq " + num(worst_fe);
  return o;
}

Outcome c3_bessel(const Context& ctx) {
  Outcome o;
  double worst_sq = 0, worst_mb = 0;
  int mb_points = 0, points = 0;
  for (double t : {1.0, 10.0, 50.0, 100.0, 200.0}) {
    const double lo = quadrature_band_min(t), hi = series_band_max(t);
    for (int k = 0; k < 12; ++k) {
      const double u = lo + (hi - lo) * k / 11.0;
      const BesselOrder nu(0, t);
      BesselValue s = ctx.series(nu, u, 1e-11);
      BesselValue q = ctx.quadrature(nu, u, 1e-11);
      worst_sq = std::max(worst_sq, rel(s.scaled_value, q.scaled_value));
      push(o.digest, s.scaled_value);
      push(o.digest, q.scaled_value);
      ++points;
      try {
        BesselValue m = ctx.mellin_barnes(nu, u, 1e-10);
        worst_mb = std::max(worst_mb, rel(m.scaled_value, q.scaled_value));
        push(o.digest, m.scaled_value);
        ++mb_points;
      } catch (const ConvergenceError&) {
        // the Mellin-Barnes route only covers moderate u
      }
    }
  }
  double worst_half = 0;
  for (double u : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double closed = std::sqrt(kPi / (2 * u)) * std::exp(-u);
    for (const BesselProvider* p : {&ctx.series, &ctx.quadrature}) {
      cplx v = (*p)(BesselOrder(0.5, 0), u, 1e-12).scaled_value;
      worst_half = std::max(worst_half, std::abs(v - closed) / closed);
      push(o.digest, v);
    }
  }
  const cplx k0 = ctx.dispatch(BesselOrder(0, 0), 1.0, 1e-12).scaled_value;
  const double k0_err = std::abs(k0 - kK0At1);
  push(o.digest, k0);
  o.pass = points == 60 && worst_sq < kBesselAgreeTol && worst_mb < kBesselAgreeTol &&
           worst_half < kBesselClosedTol && k0_err < kBesselClosedTol;
  o.detail = "series/quadrature " + num(worst_sq) + " on " + std::to_string(points) + " points, Mellin-Barnes " +
             num(worst_mb) + " on " + std::to_string(mb_points) + ", K_1/2 " + num(worst_half) + ", K_0(1) " +
             num(k0_err);
  return o;
}

Outcome c4_envelope(const Context& ctx) {
  Outcome o;
  EnvelopeGrid g;
  BoundReport coarse = envelope_check(g, {}, ctx.dispatch, ctx.opt.tol);
  BoundReport fine = envelope_check(g.refined(), {}, ctx.dispatch, ctx.opt.tol);
  int seen[3] = {0, 0, 0};
  for (const BoundSample& s : fine.samples) ++seen[static_cast<int>(s.x)];
  const double drift = std::abs(fine.fitted_C / coarse.fitted_C - 1);
  o.pass = std::isfinite(coarse.fitted_C) && std::isfinite(fine.fitted_C) && drift < kEnvelopeDrift && seen[0] > 0 &&
           seen[1] > 0 && seen[2] > 0;
  o.detail = "C " + num(coarse.fitted_C) + " -> " + num(fine.fitted_C) + " (drift " + num(drift) + "), regimes " +
             std::to_string(seen[0]) + "/" + std::to_string(seen[1]) + "/" + std::to_string(seen[2]);
  for (const BoundReport* r : {&coarse, &fine})
    for (const BoundSample& s : r->samples) o.digest.push_back(s.ratio);
  return o;
}

Outcome c5_ramanujan() {
  Outcome o;
  const std::vector<long> cps{10000, 40000, 160000, 640000, 1000000};
  std::vector<RamanujanResult> r = ramanujan_checkpoints(SpectralPoint(2.5, 0), 3, 3, cps);
  bool halving = true;
  std::string rates;
  for (std::size_t i = 0; i + 2 < r.size(); ++i) {
    const double rate = r[i].deviation / r[i + 1].deviation;
    halving = halving && rate >= kHalvingLo && rate <= kHalvingHi;
    rates += (i ? " " : "") + num(rate);
  }
  for (const RamanujanResult& x : r) {
    push(o.digest, x.partial_sum);
    o.digest.push_back(x.deviation);
  }
  const double dev = r.back().deviation;
  o.pass = dev < kRamanujanTol && halving;
  o.detail = "deviation at 1e6 " + num(dev) + ", reduction per 4x: " + rates;
  return o;
}

Outcome c6_amplifier() {
  Outcome o;
  const SpfTable table(200002);
  std::vector<double> gaps;
  std::string ratios;
  for (double N : {1e3, 1e4, 1e5}) {
    AmplifierReport r = amplifier_report(N, 50, 50, table);
    const double ratio = r.direct.real() / r.predicted_with_corrections.real();
    gaps.push_back(std::abs(ratio - 1));
    ratios += (ratios.empty() ? "" : " ") + num(ratio - 1);
    push(o.digest, r.direct);
    push(o.digest, r.predicted_with_corrections);
  }
  const bool monotone = gaps[1] < gaps[0] && gaps[2] < gaps[1];
  std::vector<AmplifierVariant> picks;
  std::string chosen;
  for (double t : {30.0, 60.0, 120.0}) {
    AmplifierReport r = amplifier_report(1e5, t, t, table);
    picks.push_back(r.selected);
    chosen += (chosen.empty() ? "" : " ") + std::string(to_string(r.selected));
    o.digest.push_back(r.variant_ratio_numerator);
    o.digest.push_back(r.variant_ratio_denominator);
  }
  const bool consistent = std::all_of(picks.begin(), picks.end(), [&](auto v) { return v == picks.front(); });
  o.pass = gaps[2] < kAmplifierBand && monotone && consistent;
  o.detail = "ratio - 1 over N=1e3,1e4,1e5: " + ratios + (monotone ? " (monotone)" : " (not monotone)") +
             "; selected " + chosen;
  return o;
}

Outcome c7_superdecay(const Context& ctx) {
  Outcome o;
  double worst = 0;
  for (double t : {10.0, 20.0, 50.0})
    for (double x : {0.0, 0.1, 0.25, 0.4, 0.5}) {
      cplx f = remainder_F(UpperHalfPoint(x, 3 * t), SpectralPoint(0.5, t), ctx.opt).value;
      worst = std::max(worst, std::abs(f));
      push(o.digest, f);
    }
  o.pass = worst < kSuperdecay;
  o.detail = "max |F| " + num(worst);
  return o;
}

// The constant at T is the largest over T + {0, 1/2, 1, 3/2}; the running
// maximum may not exceed the first value by more than the noise allowance.
Outcome c8_pointwise(const Context& ctx) {
  Outcome o;
  const UpperHalfPoint z(0.2, 1.1);
  double first = 0, running = 0, worst_quad = 0;
  std::string cs;
  for (double T : {20.0, 40.0, 80.0, 160.0}) {
    double c = 0;
    for (int j = 0; j < 4; ++j) {
      PointwiseReport p = pointwise_integral_check(z, T + 0.5 * j, 128, ctx.opt);
      c = std::max(c, p.e.fitted_C);
      worst_quad = std::max(worst_quad, p.e.quad_rel_err);
      o.digest.push_back(p.e.fitted_C);
      o.digest.push_back(p.f.fitted_C);
      o.digest.push_back(p.e.quad_rel_err);
    }
    if (first == 0) first = c;
    running = std::max(running, c);
    cs += (cs.empty() ? "" : " ") + num(c);
  }
  o.pass = running <= (1 + kPointwiseNoise) * first && worst_quad < kQuadConsistency;
  o.detail = "C(T) " + cs + ", quadrature " + num(worst_quad);
  return o;
}

Outcome c9_is_a12(const Context& ctx) {
  Outcome o;
  const UpperHalfPoint z(0.3, 1.2);
  std::vector<double> Ts{20, 40, 80}, Cs;
  for (double T : Ts) {
    BoundReport r = is_a12_check(z, T, 20, ctx.opt);
    Cs.push_back(r.fitted_C);
    o.digest.push_back(r.fitted_C);
    o.digest.push_back(r.quad_rel_err);
  }
  const double slope = loglog_slope(Ts, Cs);
  o.pass = slope < kIsA12Slope;
  o.detail = "C " + num(Cs[0]) + " " + num(Cs[1]) + " " + num(Cs[2]) + ", slope " + num(slope);
  o.digest.push_back(slope);
  return o;
}

Outcome c10_supnorm(const Context& ctx, bool print_table) {
  Outcome o;
  GridSpec g;
  g.nx = 33;
  g.ny = 65;
  g.T_list = {16, 32, 64, 128, 256};
  SupnormScan coarse = supnorm_scan(g, ctx.opt);
  SupnormScan fine = supnorm_scan(g.refined(), ctx.opt);
  double worst = 0;
  for (std::size_t i = 0; i < coarse.rows.size(); ++i)
    worst = std::max(worst, std::abs(fine.rows[i].M / coarse.rows[i].M - 1));
  if (print_table) {
    std::cout << "    T       M(T)      M(T)/T^(3/8)   argmax\n";
    for (const SupnormRow& r : coarse.rows)
      std::cout << "    " << std::setw(4) << num(r.T) << "  " << std::setw(9) << num(r.M) << "  " << std::setw(12)
                << num(r.ratio_T38) << "   (" << num(r.argmax_x) << ", " << num(r.argmax_y) << ")\n";
  }
  for (const SupnormScan* s : {&coarse, &fine})
    for (const SupnormRow& r : s->rows) {
      o.digest.push_back(r.M);
      o.digest.push_back(r.argmax_x);
      o.digest.push_back(r.argmax_y);
    }
  o.pass = coarse.fitted_exponent < kSupExponent && worst < kSupRefine;
  o.detail = "exponent " + num(coarse.fitted_exponent) + ", refinement change " + num(worst);
  return o;
}

std::vector<Criterion> criteria(const Context& ctx, bool print) {
  return {
      {1, "direct vs Fourier evaluator", 120, [&] { return c1_cross_evaluator(ctx); }},
      {2, "automorphy and functional equation", 120, [&] { return c2_automorphy(ctx); }},
      {3, "Bessel cross-method agreement", 300, [&] { return c3_bessel(ctx); }},
      {4, "Bessel envelope domination", 600, [&] { return c4_envelope(ctx); }},
      {5, "Ramanujan identity", 0, [] { return c5_ramanujan(); }},
      {6, "amplifier asymptotic", 600, [] { return c6_amplifier(); }},
      {7, "superdecay of F above the transition", 0, [&] { return c7_superdecay(ctx); }},
      {8, "pointwise integral inequality", 900, [&] { return c8_pointwise(ctx); }},
      {9, "Eisenstein part of the amplified bound", 900, [&] { return c9_is_a12(ctx); }},
      {10, "sup-norm scan", 1800, [&, print] { return c10_supnorm(ctx, print); }},
  };
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "eisen_acceptance_cache";
  fs::remove_all(dir);
  const std::string path = cache_file_in(dir.string());
  std::cout << std::unitbuf;

  bool all = true;
  std::vector<std::vector<double>> cold;
  {
    BesselCache cache(path);
    const Context ctx = make_context(cache);
    for (const Criterion& c : criteria(ctx, true)) {
      const auto start = std::chrono::steady_clock::now();
      Outcome o;
      try {
        o = c.run();
      } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const bool in_time = c.limit_s == 0 || secs < c.limit_s;
      const bool pass = o.pass && in_time;
      all = all && pass;
      std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
                << std::fixed << std::setprecision(1) << secs << " s"
                << (in_time ? "" : ", over the " + num(c.limit_s) + " s limit") << "]\n"
                << std::defaultfloat << std::setprecision(6);
      cold.push_back(std::move(o.digest));
    }
  }

  BesselCache warm_cache(path);
  const Context warm = make_context(warm_cache);
  std::vector<int> differing;
  std::size_t index = 0;
  for (const Criterion& c : criteria(warm, false)) {
    std::vector<double> digest;
    try {
      digest = c.run().digest;
    } catch (const std::exception&) {
    }
    if (!same_bits(digest, cold[index++])) differing.push_back(c.id);
  }
  std::string which;
  for (int id : differing) which += " " + std::to_string(id);
  const bool deterministic = differing.empty() && warm_cache.size() > 0 && warm_cache.corrupt_lines() == 0;
  all = all && deterministic;
  std::cout << (deterministic ? "PASS" : "FAIL") << " criterion 11 (warm-cache determinism): "
            << warm_cache.size() << " cached values, "
            << (differing.empty() ? "all digests identical" : "digests differ for" + which) << "\n";

  fs::remove_all(dir);
  return all ? 0 : 1;
}
