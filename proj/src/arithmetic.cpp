#include "eisen/arithmetic.hpp"

#include "eisen/errors.hpp"
#include "eisen/gamma_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eisen {

namespace {
constexpr std::uint64_t kLogTableLimit = 20'000'000;
}

FactoredInteger::FactoredInteger(std::uint64_t n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {
  if (n == 0) throw DomainError("factored integer must be positive");
  std::uint64_t prod = 1, prev = 1;
  for (const auto& f : factors_) {
    if (f.p <= prev || f.e < 1) throw DomainError("factorization must list increasing primes with e >= 1");
    for (int i = 0; i < f.e; ++i) prod *= f.p;
    prev = f.p;
  }
  if (prod != n) throw DomainError("factorization does not multiply to n");
}

SpfTable::SpfTable(std::uint64_t limit) : limit_(limit) {
  if (limit > kMaxSieveLimit)
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds " + std::to_string(kMaxSieveLimit));
  if (limit < 2) limit_ = limit = 2;
  spf_.assign(limit + 1, 0);
  // log p is tabulated for the table sizes the amplifier uses; very large
  // tables compute it on demand to keep memory at one word per entry
  const bool tabulate = limit <= kLogTableLimit;
  if (tabulate) log_p_.assign(limit + 1, 0.0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    if (tabulate) log_p_[i] = std::log(static_cast<double>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
  spf_[1] = 1;
}

double SpfTable::log_prime(std::uint64_t p) const {
  return log_p_.empty() ? std::log(static_cast<double>(p)) : log_p_[p];
}

std::uint32_t SpfTable::spf(std::uint64_t n) const {
  if (n < 1 || n > limit_) throw RangeError("spf lookup outside sieve range");
  return spf_[n];
}

FactoredInteger SpfTable::factor(std::uint64_t n) const {
  if (n < 1 || n > limit_) throw RangeError("factorization outside sieve range: " + std::to_string(n));
  std::vector<PrimePower> f;
  std::uint64_t m = n;
  while (m > 1) {
    std::uint64_t p = spf_[m];
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  return FactoredInteger(n, std::move(f));
}

SpfTable sieve_spf(std::uint64_t limit) { return SpfTable(limit); }

FactoredInteger factor_trial(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factor 0");
  std::vector<PrimePower> f;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (m > 1) f.push_back({m, 1});
  return FactoredInteger(n, std::move(f));
}

cplx tau_w(const FactoredInteger& n, cplx w) {
  cplx result = 1.0;
  for (const auto& [p, e] : n.factors()) {
    const double lp = std::log(static_cast<double>(p));
    cplx local = 0.0;
    for (int j = 0; j <= e; ++j) local += std::exp(w * (double(2 * j - e) * lp));
    result *= local;
  }
  return result;
}

namespace {

template <class LogP>
double tau_it_impl(const FactoredInteger& n, double t, LogP log_p) {
  double result = 1.0;
  for (const auto& [p, e] : n.factors()) {
    const double theta = t * log_p(p);
    double local = 0.0;
    for (int j = 0; j <= e; ++j) local += std::cos((2 * j - e) * theta);
    result *= local;
  }
  return result;
}

}  // namespace

double tau_it(const FactoredInteger& n, double t) {
  return tau_it_impl(n, t, [](std::uint64_t p) { return std::log(static_cast<double>(p)); });
}

double tau_it(const FactoredInteger& n, double t, const SpfTable& table) {
  return tau_it_impl(n, t, [&](std::uint64_t p) { return table.log_prime(p); });
}

std::vector<std::uint32_t> totient_table(std::uint32_t limit) {
  std::vector<std::uint32_t> phi(limit + 1);
  for (std::uint32_t i = 0; i <= limit; ++i) phi[i] = i;
  for (std::uint32_t p = 2; p <= limit; ++p) {
    if (phi[p] != p) continue;
    for (std::uint32_t k = p; k <= limit; k += p) phi[k] -= phi[k] / p;
  }
  return phi;
}

std::vector<RamanujanResult> ramanujan_checkpoints(const SpectralPoint& sp, double t, double r,
                                                   const std::vector<long>& checkpoints) {
  if (sp.sigma() < 1.5) throw ConvergenceError("Ramanujan check needs Re s >= 1.5");
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() < 1000)
    throw DomainError("checkpoints must be ascending and at least 1000");
  const cplx s = sp.value();
  const cplx i(0.0, 1.0);
  cplx product = zeta_value(s + i * (t + r)) * zeta_value(s + i * (t - r)) * zeta_value(s - i * (t - r)) *
                 zeta_value(s - i * (t + r)) / zeta_value(2.0 * s);

  const long n_max = checkpoints.back();
  SpfTable table(static_cast<std::uint64_t>(n_max));
  // Neumaier-compensated sums in long double keep the reduction order fixed
  // and the rounding well below the tail.
  long double sr = 0, si = 0, cr = 0, ci = 0;
  auto add = [](long double& sum, long double& comp, long double x) {
    long double tsum = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - tsum) + x;
    else
      comp += (x - tsum) + sum;
    sum = tsum;
  };
  std::vector<RamanujanResult> out;
  std::size_t next = 0;
  for (long n = 1; n <= n_max; ++n) {
    FactoredInteger f = table.factor(static_cast<std::uint64_t>(n));
    double coeff = tau_it(f, t, table) * tau_it(f, r, table);
    if (coeff != 0.0) {
      cplx term = coeff * std::exp(-s * std::log(static_cast<double>(n)));
      add(sr, cr, term.real());
      add(si, ci, term.imag());
    }
    while (next < checkpoints.size() && checkpoints[next] == n) {
      cplx partial(static_cast<double>(sr + cr), static_cast<double>(si + ci));
      out.push_back({partial, product, std::abs(partial - product)});
      ++next;
    }
  }
  return out;
}

RamanujanResult ramanujan_check(const SpectralPoint& s, double t, double r, long n_terms) {
  return ramanujan_checkpoints(s, t, r, {n_terms}).front();
}

}  // namespace eisen
