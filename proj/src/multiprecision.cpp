#include "eisen/multiprecision.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <vector>

namespace eisen {

namespace {

std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

using Rational = boost::multiprecision::mpq_rational;

// Exact B_0..B_{2K} from the classical recurrence
//   sum_{j=0}^{m} C(m+1, j) B_j = 0.
const std::vector<Rational>& bernoulli_table() {
  static const std::vector<Rational> table = [] {
    const int n_max = 2 * kMaxBernoulliIndex;
    std::vector<Rational> b(n_max + 1);
    b[0] = 1;
    // binom[j] holds C(m+1, j) for the current m
    std::vector<boost::multiprecision::mpz_int> binom(n_max + 2);
    for (int m = 1; m <= n_max; ++m) {
      binom.assign(n_max + 2, 0);
      binom[0] = 1;
      for (int j = 1; j <= m + 1; ++j) binom[j] = binom[j - 1] * (m + 2 - j) / j;
      if (m > 1 && m % 2 == 1) {
        b[m] = 0;
        continue;
      }
      Rational acc = 0;
      for (int j = 0; j < m; ++j) {
        if (j > 1 && j % 2 == 1) continue;
        acc += Rational(binom[j]) * b[j];
      }
      b[m] = -acc / Rational(binom[m]);
    }
    return b;
  }();
  return table;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned digits10)
    : lock_(precision_mutex()), digits_(digits10), previous_(MpReal::default_precision()) {
  MpReal::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { MpReal::default_precision(previous_); }

MpReal bernoulli_b2n_mp(int k) {
  if (k < 0 || k > kMaxBernoulliIndex) throw std::out_of_range("bernoulli index out of range");
  const Rational& q = bernoulli_table()[2 * k];
  MpReal num(boost::multiprecision::numerator(q).str());
  MpReal den(boost::multiprecision::denominator(q).str());
  return num / den;
}

double bernoulli_b2n_double(int k) { return boost::math::bernoulli_b2n<double>(k); }

long double bernoulli_b2n_long_double(int k) { return boost::math::bernoulli_b2n<long double>(k); }

}  // namespace eisen
