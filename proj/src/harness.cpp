#include "eisen/harness.hpp"

#include "eisen/amplifier.hpp"
#include "eisen/arithmetic.hpp"
#include "eisen/errors.hpp"
#include "eisen/gamma_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>

namespace eisen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBeyondFloor = 1e-20;
constexpr int kMaxQuadPoints = 16384;
constexpr double kQuadAgreement = 1e-3;
constexpr std::size_t kPolishedPeaks = 5;

std::vector<double> lattice(double lo, double hi, int n) {
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / (n - 1);
  v.back() = hi;
  return v;
}

// E(z, 1/2 + it), falling back to the general evaluator below t = 1.
EisensteinValue critical_value(const UpperHalfPoint& z, double t, const FourierOptions& opt) {
  if (std::abs(t) >= 1.0) return e_critical(z, std::abs(t), opt);
  return eisenstein_fourier(z, SpectralPoint(0.5, t), opt);
}

// Nested Clenshaw-Curtis: the rule with n intervals reuses every node of the
// rule with n/2, so each doubling costs only the new samples. The integrand
// returns several components that share nodes.
class NestedClenshawCurtis {
 public:
  using Sampler = std::function<std::vector<double>(double)>;

  NestedClenshawCurtis(Sampler f, double a, double b) : f_(std::move(f)), a_(a), b_(b) {}

  std::vector<double> rule(int n) {
    const std::vector<double> w = weights(n);
    std::vector<double> acc;
    const double half = 0.5 * (b_ - a_);
    for (int k = 0; k <= n; ++k) {
      const std::vector<double>& v = sample(k, n);
      if (acc.empty()) acc.assign(v.size(), 0.0);
      for (std::size_t j = 0; j < v.size(); ++j) acc[j] += w[k] * v[j];
    }
    for (double& x : acc) x *= half;
    return acc;
  }

 private:
  const std::vector<double>& sample(int k, int n) {
    const int g = std::gcd(k, n);
    const std::pair<int, int> key{k / g, n / g};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double c = std::cos(kPi * key.first / key.second);
    const double t = 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * c;
    return cache_.emplace(key, f_(t)).first->second;
  }

  static std::vector<double> weights(int n) {
    // cos(m pi / n) for m < 2n, indexed to avoid n^2 calls to cos
    std::vector<double> cs(2 * n);
    for (int m = 0; m < 2 * n; ++m) cs[m] = std::cos(kPi * m / n);
    std::vector<double> w(n + 1);
    for (int k = 0; k <= n; ++k) {
      double s = 1.0;
      for (int j = 1; j <= n / 2; ++j) {
        const double b = (2 * j == n) ? 1.0 : 2.0;
        s -= b / (4.0 * j * j - 1.0) * cs[(2L * j * k) % (2 * n)];
      }
      w[k] = ((k == 0 || k == n) ? 1.0 : 2.0) / n * s;
    }
    return w;
  }

  Sampler f_;
  double a_, b_;
  std::map<std::pair<int, int>, std::vector<double>> cache_;
};

struct Integrated {
  std::vector<double> value;
  double rel_err = 0.0;
  int points = 0;
};

Integrated integrate_nested(NestedClenshawCurtis::Sampler f, double a, double b, int n0) {
  NestedClenshawCurtis cc(std::move(f), a, b);
  int n = n0 % 2 ? n0 + 1 : n0;
  std::vector<double> prev = cc.rule(n);
  while (2 * n <= kMaxQuadPoints) {
    n *= 2;
    std::vector<double> cur = cc.rule(n);
    double worst = 0.0;
    for (std::size_t j = 0; j < cur.size(); ++j)
      worst = std::max(worst, std::abs(cur[j] - prev[j]) / std::max(std::abs(cur[j]), 1e-300));
    if (worst <= kQuadAgreement) return {cur, worst, n + 1};
    prev = std::move(cur);
  }
  throw QuadratureError("nested Clenshaw-Curtis did not settle within " + std::to_string(kMaxQuadPoints) +
                        " points");
}

double fourier_shape(double t, double y) {
  const double lt = std::log(t);
  return std::sqrt(t / y) * lt * lt;
}

}  // namespace

void GridSpec::validate() const {
  if (!(y0 >= std::sqrt(3.0) / 2)) throw DomainError("grid must satisfy y0 >= sqrt(3)/2");
  if (!(x0 <= x1) || !(y0 <= y1) || !std::isfinite(x1) || !std::isfinite(y1))
    throw DomainError("grid ranges must be finite and ordered");
  if (nx < 1 || ny < 1) throw DomainError("grid needs nx, ny >= 1");
}

std::vector<double> GridSpec::xs() const { return lattice(x0, x1, nx); }
std::vector<double> GridSpec::ys() const { return lattice(y0, y1, ny); }

GridSpec GridSpec::refined() const {
  GridSpec g = *this;
  g.nx = nx > 1 ? 2 * nx - 1 : 1;
  g.ny = ny > 1 ? 2 * ny - 1 : 1;
  return g;
}

void BoundReport::add(const BoundSample& s) {
  if (!std::isfinite(s.ratio)) throw RangeError(name + ": non-finite ratio");
  if (samples.empty() || s.ratio > fitted_C) {
    fitted_C = s.ratio;
    argmax = s;
  }
  samples.push_back(s);
}

void write_ratios_csv(BoundReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write " + path);
  out << "x,y,sigma,t,observed,bound,ratio\n" << std::setprecision(17);
  for (const BoundSample& s : report.samples)
    out << s.x << ',' << s.y << ',' << s.sigma << ',' << s.t << ',' << s.observed << ',' << s.bound << ','
        << s.ratio << '\n';
  if (!out) throw ResourceError("write failed for " + path);
  report.ratios_path = path;
}

Lemma1Report lemma1_check(const GridSpec& grid, const FourierOptions& opt) {
  grid.validate();
  if (grid.y0 < 1.0) throw DomainError("lemma1 check needs y >= 1");
  for (double T : grid.T_list)
    if (!(T >= 2.0)) throw DomainError("lemma1 check needs T >= 2");
  Lemma1Report rep;
  rep.e.name = "lemma1_E";
  rep.f.name = "lemma1_F";
  rep.e.grid = rep.f.grid = grid;
  const std::vector<double> xs = grid.xs();
  for (double T : grid.T_list) {
    for (double y : grid.ys()) {
      std::vector<EisensteinValue> row = e_critical_row(xs, y, T, opt);
      const double shape = fourier_shape(T, y);
      const double be = std::sqrt(y) + shape;
      const double bf = shape + std::sqrt(y) / std::cbrt(T);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const double e = std::abs(row[k].value);
        const double f = std::abs(row[k].value - row[k].constant_term);
        rep.e.add({xs[k], y, 0.5, T, e, be, e / be});
        rep.f.add({xs[k], y, 0.5, T, f, bf, f / bf});
      }
    }
  }
  return rep;
}

Lemma2Report lemma2_check(const Lemma2Spec& spec, const FourierOptions& opt) {
  Lemma2Report rep;
  rep.decay.name = "lemma2_sigma_gt_1";
  rep.strip.name = "lemma2_critical_strip";
  rep.beyond.name = "lemma2_beyond_T";
  rep.bessel.name = "lemma2_kbessel_lambda_1.1";

  for (double sigma : spec.decay_sigmas) {
    if (!(sigma > 1.0)) throw DomainError("lemma2 decay grid needs sigma > 1");
    for (double t : spec.decay_ts)
      for (double y : spec.decay_ys)
        for (double x : spec.xs) {
          double f = std::abs(remainder_F(UpperHalfPoint(x, y), SpectralPoint(sigma, t), opt).value);
          double b = std::pow(y, 1.0 - sigma);
          rep.decay.add({x, y, sigma, t, f, b, f / b});
        }
  }

  for (double sigma : spec.strip_sigmas) {
    if (sigma < 0.5 || sigma > 1.0) throw DomainError("lemma2 strip grid needs 1/2 <= sigma <= 1");
    for (double t : spec.strip_ts) {
      for (double y : spec.strip_ys) {
        for (double x : spec.xs) {
          double f = std::abs(remainder_F(UpperHalfPoint(x, y), SpectralPoint(sigma, t), opt).value);
          double b = std::pow(1.0 + std::abs(t), 1.1) * std::pow(y, -sigma);
          rep.strip.add({x, y, sigma, t, f, b, f / b});
        }
        // K_{sigma - 1/2 + it}(2 pi y) / Gamma(sigma + it), the Bessel factor in F
        if (std::abs(t) >= 1.0) {
          const double u = 2 * kPi * y;
          const double nu_re = sigma - 0.5;
          BesselValue k = k_bessel(BesselOrder(nu_re, t), u, opt.tol);
          double lg = log_gamma(cplx(0.5 + nu_re, t)).real();
          double obs = std::abs(k.scaled_value) * std::exp(-k.log_scale - lg);
          double b = std::pow(u, -nu_re) * std::pow(std::abs(t) / u, 1.1);
          rep.bessel.add({0.0, u, nu_re, t, obs, b, obs / b});
        }
      }
    }
  }

  rep.beyond_ok = true;
  for (double t : spec.beyond_ts) {
    if (!(t >= 10.0)) throw DomainError("lemma2 beyond-T grid needs t >= 10");
    for (double factor : spec.beyond_factors) {
      if (!(factor >= 3.0)) throw DomainError("lemma2 beyond-T grid needs y >= 3t");
      for (double x : spec.xs) {
        const double y = factor * t;
        double f = std::abs(remainder_F(UpperHalfPoint(x, y), SpectralPoint(0.5, t), opt).value);
        rep.beyond.add({x, y, 0.5, t, f, kBeyondFloor, f / kBeyondFloor});
        if (!(f < kBeyondFloor)) rep.beyond_ok = false;
      }
    }
  }
  return rep;
}

PointwiseReport pointwise_integral_check(const UpperHalfPoint& z, double T, int quad_points,
                                         const FourierOptions& opt) {
  if (!(T >= 10.0)) throw DomainError("pointwise check needs T >= 10");
  if (quad_points < 64) throw DomainError("pointwise check needs at least 64 quadrature points");
  const double y = z.y();
  const double L = std::log(T);
  const double L5 = std::pow(L, 5);

  auto sampler = [&](double t) -> std::vector<double> {
    EisensteinValue v = critical_value(z, t, opt);
    return {std::norm(v.value), std::norm(v.value - v.constant_term)};
  };
  Integrated q = integrate_nested(sampler, T - 4 * L, T + 4 * L, quad_points);

  EisensteinValue at = critical_value(z, T, opt);
  const double lhs_e = std::norm(at.value);
  const double lhs_f = std::norm(at.value - at.constant_term);
  const double rhs_e = y * L5 * L + L5 * q.value[0];
  const double rhs_f = L5 / y + L5 * q.value[1];

  PointwiseReport rep;
  rep.quad_points = q.points;
  rep.e.name = "pointwise_E";
  rep.f.name = "pointwise_F";
  for (BoundReport* r : {&rep.e, &rep.f}) {
    r->grid.x0 = r->grid.x1 = z.x();
    r->grid.y0 = r->grid.y1 = y;
    r->grid.nx = r->grid.ny = 1;
    r->grid.T_list = {T};
    r->quad_rel_err = q.rel_err;
  }
  rep.e.add({z.x(), y, 0.5, T, lhs_e, rhs_e, lhs_e / rhs_e});
  rep.f.add({z.x(), y, 0.5, T, lhs_f, rhs_f, lhs_f / rhs_f});
  return rep;
}

BoundReport is_a12_check(const UpperHalfPoint& z, double T, double N, const FourierOptions& opt) {
  if (!(T >= 2.0)) throw DomainError("is_a12 check needs T >= 2");
  if (!(N >= 2.0) || !std::isfinite(N)) throw DomainError("is_a12 check needs N >= 2");
  const double top = std::ceil(2 * N);
  if (top > double(kMaxSieveLimit)) throw ResourceError("is_a12 check: 2N beyond the sieve limit");
  const SpfTable table(static_cast<std::uint64_t>(top));
  const WeightFunction w = bump_weight();
  const double t_mid = T + 0.5;

  std::vector<FactoredInteger> ns;
  std::vector<double> alpha;
  double sum_sq = 0.0, sum_abs = 0.0;
  for (auto n = static_cast<std::uint64_t>(std::floor(N)) + 1; double(n) < 2 * N; ++n) {
    double wn = w.evaluate(double(n) / N);
    if (wn == 0.0) continue;
    FactoredInteger f = table.factor(n);
    double a = wn * tau_it(f, t_mid, table);
    ns.push_back(f);
    alpha.push_back(a);
    sum_sq += a * a;
    sum_abs += std::abs(a);
  }

  auto sampler = [&](double t) -> std::vector<double> {
    double poly = 0.0;
    for (std::size_t k = 0; k < ns.size(); ++k) poly += alpha[k] * tau_it(ns[k], t, table);
    return {poly * poly * std::norm(critical_value(z, t, opt).value)};
  };
  Integrated q = integrate_nested(sampler, T, T + 1, 32);

  const double len = 2 * N;
  const double rhs = T * sum_sq + std::sqrt(T) * (len + std::sqrt(len) * z.y()) * sum_abs * sum_abs;
  BoundReport rep;
  rep.name = "is_a12";
  rep.grid.x0 = rep.grid.x1 = z.x();
  rep.grid.y0 = rep.grid.y1 = z.y();
  rep.grid.nx = rep.grid.ny = 1;
  rep.grid.T_list = {T};
  rep.quad_rel_err = q.rel_err;
  rep.add({z.x(), z.y(), 0.5, T, q.value[0], rhs, q.value[0] / rhs});
  return rep;
}

std::string to_string(BudgetRegime r) {
  switch (r) {
    case BudgetRegime::amplified_small_y: return "amplified_small_y";
    case BudgetRegime::amplified_medium_y: return "amplified_medium_y";
    case BudgetRegime::fourier_large_y: return "fourier_large_y";
  }
  return "unknown";
}

Budget budget(double T, double y) {
  if (!(T >= 2.0) || !(y >= 1.0)) throw DomainError("budget needs T >= 2 and y >= 1");
  if (y <= std::pow(T, 0.125)) return {BudgetRegime::amplified_small_y, std::pow(T, 0.25), std::pow(T, 0.375)};
  if (y <= std::pow(T, 1.0 / 6))
    return {BudgetRegime::amplified_medium_y, std::pow(y, -2.0 / 3) * std::cbrt(T), std::cbrt(y * T)};
  return {BudgetRegime::fourier_large_y, 0.0, std::sqrt(y) + fourier_shape(T, y)};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& v) {
  if (x.size() != v.size() || x.size() < 2) throw DomainError("slope fit needs two or more matched points");
  double mx = 0, mv = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0) || !(v[k] > 0)) throw DomainError("slope fit needs positive data");
    mx += std::log(x[k]);
    mv += std::log(v[k]);
  }
  mx /= x.size();
  mv /= v.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(v[k]) - mv);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw DomainError("slope fit needs distinct abscissae");
  return sxy / sxx;
}

SupnormScan supnorm_scan(const GridSpec& grid, const FourierOptions& opt) {
  grid.validate();
  if (grid.T_list.empty()) throw DomainError("sup-norm scan needs at least one height");
  std::vector<double> Ts = grid.T_list;
  std::sort(Ts.begin(), Ts.end());
  const std::vector<double> xs = grid.xs();
  const double hx = grid.nx > 1 ? (grid.x1 - grid.x0) / (grid.nx - 1) : 0.0;
  const double hy = grid.ny > 1 ? (grid.y1 - grid.y0) / (grid.ny - 1) : 0.0;

  const std::vector<double> ys = grid.ys();
  const int nx = grid.nx, ny = grid.ny;

  // compass search from (bx, by), step halved on failure
  auto polish = [&](double T, double& bx, double& by, double best) {
    double sx = hx / 2, sy = hy / 2;
    for (int iter = 0; iter < 200 && (sx > 1e-7 || sy > 1e-7); ++iter) {
      bool moved = false;
      const double cand[4][2] = {{bx + sx, by}, {bx - sx, by}, {bx, by + sy}, {bx, by - sy}};
      for (const auto& c : cand) {
        if (c[0] == bx && c[1] == by) continue;
        if (c[0] < grid.x0 || c[0] > grid.x1 || c[1] < grid.y0 || c[1] > grid.y1) continue;
        double a = std::abs(e_critical(UpperHalfPoint(c[0], c[1]), T, opt).value);
        if (a > best) {
          best = a;
          bx = c[0];
          by = c[1];
          moved = true;
          break;
        }
      }
      if (!moved) {
        sx /= 2;
        sy /= 2;
      }
    }
    return best;
  };

  SupnormScan scan;
  for (double T : Ts) {
    std::vector<double> a(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
      std::vector<EisensteinValue> vals = e_critical_row(xs, ys[j], T, opt);
      for (int i = 0; i < nx; ++i) a[j * nx + i] = std::abs(vals[i].value);
    }
    // lattice local maxima, largest first
    std::vector<int> peaks;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double v = a[j * nx + i];
        bool top = true;
        for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
          int ii = i + di, jj = j + dj;
          if (ii >= 0 && ii < nx && jj >= 0 && jj < ny && a[jj * nx + ii] > v) top = false;
        }
        if (top) peaks.push_back(j * nx + i);
      }
    std::stable_sort(peaks.begin(), peaks.end(), [&](int p, int q) { return a[p] > a[q]; });
    if (peaks.size() > kPolishedPeaks) peaks.resize(kPolishedPeaks);

    SupnormRow row;
    row.T = T;
    row.grid_max = a[peaks.front()];
    for (int p : peaks) {
      double bx = xs[p % nx], by = ys[p / nx];
      double m = polish(T, bx, by, a[p]);
      if (m > row.M) {
        row.M = m;
        row.argmax_x = bx;
        row.argmax_y = by;
      }
    }
    row.ratio_T38 = row.M / std::pow(T, 0.375);
    scan.rows.push_back(row);
  }
  std::vector<double> M;
  for (const SupnormRow& r : scan.rows) M.push_back(r.M);
  scan.fitted_exponent = Ts.size() > 1 ? loglog_slope(Ts, M) : std::numeric_limits<double>::quiet_NaN();
  return scan;
}

EnvelopeGrid EnvelopeGrid::refined() const {
  EnvelopeGrid g = *this;
  g.nt = 2 * nt - 1;
  g.nu = 2 * nu - 1;
  return g;
}

BoundReport envelope_check(const EnvelopeGrid& grid, const EnvelopeConstants& k, const BesselProvider& bessel,
                           double tol) {
  if (!(grid.t0 >= 1.0) || !(grid.t1 >= grid.t0) || grid.nt < 1 || grid.nu < 2 || !(grid.u_lo > 0) ||
      !(grid.u_hi > grid.u_lo))
    throw DomainError("envelope grid is malformed");
  const BesselProvider provider = bessel ? bessel : default_bessel_provider();
  BoundReport rep;
  rep.name = "balogh_envelope";
  rep.grid.T_list.clear();
  for (int i = 0; i < grid.nt; ++i) {
    const double t = grid.nt == 1 ? grid.t0 : grid.t0 * std::pow(grid.t1 / grid.t0, double(i) / (grid.nt - 1));
    rep.grid.T_list.push_back(t);
    for (double ratio : lattice(grid.u_lo, grid.u_hi, grid.nu)) {
      const double u = ratio * t;
      BesselValue v = provider(BesselOrder(0.0, t), u, tol);
      Envelope env = balogh_envelope(t, u, k);
      double obs = cosh_normalized_abs(v, t);
      rep.add({double(static_cast<int>(env.regime)), u, 0.0, t, obs, env.value, obs / env.value});
    }
  }
  return rep;
}

}  // namespace eisen
