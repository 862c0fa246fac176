#include "eisen/eisenstein.hpp"

#include "eisen/arithmetic.hpp"
#include "eisen/errors.hpp"
#include "eisen/gamma_zeta.hpp"
#include "eisen/multiprecision.hpp"

#include <cfloat>
#include <cmath>
#include <numeric>
#include <vector>

namespace eisen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxRadius = 100'000;
constexpr int kEmTerms = 8;
constexpr int kMaxBinomialTerms = 60;

// Sum over m >= 0 of ((A + m)^2 + y^2)^{-s}, A > 3y, from the binomial
// expansion in (y / (A + m))^2 and the Euler-Maclaurin form of each Hurwitz
// zeta(2s + 2j, A).
struct HurwitzTail {
  cplx s;
  double y;
  std::vector<double> b2k_over_fact;  // B_{2k} / (2k)!

  HurwitzTail(cplx s_, double y_) : s(s_), y(y_) {
    double fact = 1.0;
    for (int k = 1; k <= kEmTerms; ++k) {
      fact *= (2.0 * k - 1) * (2.0 * k);
      b2k_over_fact.push_back(bernoulli_b2n_double(k) / fact);
    }
  }

  cplx operator()(double A) const {
    const cplx a_pow = std::exp(-2.0 * s * std::log(A));  // A^{-2s}
    const double ratio = (y / A) * (y / A);
    cplx binom = 1.0;  // binom(-s, j)
    double rpow = 1.0;
    cplx total = 0.0;
    for (int j = 0; j < kMaxBinomialTerms; ++j) {
      const cplx w = 2.0 * s + 2.0 * j;
      // zeta(w, A) * A^{w}
      cplx h = A / (w - 1.0) + 0.5;
      cplx rising = w;  // (w)_{2k-1}
      double apow = 1.0 / A;
      for (int k = 1; k <= kEmTerms; ++k) {
        h += b2k_over_fact[k - 1] * rising * apow;
        rising *= (w + double(2 * k - 1)) * (w + double(2 * k));
        apow /= A * A;
      }
      cplx term = binom * rpow * h;
      total += term;
      if (j > 2 && std::abs(term) < 1e-18 * std::abs(total)) break;
      binom *= (-s - double(j)) / double(j + 1);
      rpow *= ratio;
    }
    return a_pow * total;
  }
};

int mobius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

}  // namespace

EvalResult eisenstein_direct(const UpperHalfPoint& z, const SpectralPoint& sp, int radius, double tol) {
  if (sp.sigma() < 1.5) throw DomainError("coset sum needs Re s >= 3/2");
  if (radius < 1 || radius > kMaxRadius) throw DomainError("coset sum radius must lie in [1, 100000]");
  const cplx s = sp.value();
  const double sigma = sp.sigma(), t = sp.t();
  const double x = z.x(), y = z.y();
  const int M = static_cast<int>(std::ceil(std::max(10.0, 3 * y + std::abs(t))));
  const HurwitzTail tail(s, y);

  // classes with c <= radius
  std::vector<std::uint32_t> phi = totient_table(static_cast<std::uint32_t>(radius));
  cplx head = 0.0;
  std::complex<long double> phi_sum = 0.0L, mobius_sum = 0.0L;
  double l1 = 0.0;
  for (int c = 1; c <= radius; ++c) {
    cplx class_sum = 0.0;
    double class_l1 = 0.0;
    for (int a = 0; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      double alpha = x + double(a) / c;
      alpha -= std::floor(alpha);
      cplx sum = 0.0;
      for (int m = -M; m <= M; ++m) {
        const double v = m + alpha;
        const double L = std::log(v * v + y * y);
        const double mag = std::exp(-sigma * L);
        sum += cplx(mag * std::cos(t * L), -mag * std::sin(t * L));
        class_l1 += mag;
      }
      sum += tail(M + 1 + alpha) + tail(M + 1 - alpha);
      class_sum += sum;
    }
    const cplx c_pow = std::exp(-2.0 * s * std::log(double(c)));
    head += c_pow * class_sum;
    l1 += std::abs(c_pow) * class_l1;
    phi_sum += std::complex<long double>(double(phi[c]) * c_pow);
    if (int mu = mobius(c)) mobius_sum += std::complex<long double>(double(mu) * c_pow);
  }

  const cplx ys = std::exp(s * std::log(y));
  // mean of a class sum over alpha in [0, 1)
  const cplx mean = std::sqrt(kPi) * std::exp(log_gamma(s - 0.5) - log_gamma(s)) * std::exp((1.0 - 2.0 * s) * std::log(y));
  const cplx zeta_2s = zeta_value(2.0 * s);
  const std::complex<long double> ratio(zeta_value(2.0 * s - 1.0) / zeta_value(2.0 * s));
  const cplx far = mean * cplx(ratio - phi_sum);

  // Modes k = +-1 of the class sums for c > radius: the Ramanujan sum c_c(1)
  // is mu(c), whose Dirichlet series tail is known exactly.
  const BesselOrder order(sigma - 0.5, t);
  const cplx log_mode = s * std::log(kPi) + (0.5 - s) * std::log(y) - log_gamma(s) - kPi * std::abs(t) / 2;
  const cplx s1 = 2.0 * std::exp(log_mode) * k_bessel(order, 2 * kPi * y, 1e-10).scaled_value;
  const cplx first_mode = 2.0 * std::cos(2 * kPi * x) * s1 * cplx(std::complex<long double>(1.0 / zeta_2s) - mobius_sum);

  const cplx value = ys * (1.0 + head + far + first_mode);

  // Remaining modes |k| >= 2: |S_k| times a Ramanujan sum bounded by k.
  const double log_norm = log_mode.real();
  const double c_tail = std::pow(double(radius), 1 - 2 * sigma) / (2 * sigma - 1);
  double mode_bound = 0.0;
  for (int k = 2; k <= 8; ++k) {
    BesselValue kv = k_bessel(order, 2 * kPi * k * y, 1e-3);
    double sk = 2 * std::exp(log_norm + (sigma - 0.5) * std::log(double(k))) * std::abs(kv.scaled_value);
    mode_bound += 2.0 * k * sk;
    if (sk < 1e-20) break;
  }
  const double ymag = std::abs(ys);
  double err = ymag * (mode_bound * c_tail + (l1 + 1.0) * 64 * DBL_EPSILON) +
               std::abs(value) * 64 * DBL_EPSILON;
  if (err > tol * std::abs(value))
    throw ConvergenceError("coset sum tail estimate " + std::to_string(err / std::abs(value)) +
                           " exceeds tolerance; increase the radius");
  return {value, err, Method::direct_sum};
}

}  // namespace eisen
