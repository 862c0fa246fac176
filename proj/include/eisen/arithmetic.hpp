#pragma once

#include "eisen/types.hpp"

#include <cstdint>
#include <vector>

namespace eisen {

struct PrimePower {
  std::uint64_t p;
  int e;
};

/// n together with its prime factorization (primes strictly increasing).
class FactoredInteger {
 public:
  FactoredInteger(std::uint64_t n, std::vector<PrimePower> factors);

  std::uint64_t n() const noexcept { return n_; }
  const std::vector<PrimePower>& factors() const noexcept { return factors_; }

 private:
  std::uint64_t n_;
  std::vector<PrimePower> factors_;
};

inline constexpr std::uint64_t kMaxSieveLimit = 100'000'000;

/// Smallest-prime-factor table; immutable once built.
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint32_t spf(std::uint64_t n) const;
  FactoredInteger factor(std::uint64_t n) const;
  /// log p for a prime p <= limit.
  double log_prime(std::uint64_t p) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<double> log_p_;
};

/// Builds the table; ResourceError above kMaxSieveLimit.
SpfTable sieve_spf(std::uint64_t limit);

/// Trial division, for occasional n outside a table.
FactoredInteger factor_trial(std::uint64_t n);

/// tau_w(n) = sum_{ab = n} (a/b)^w, multiplicatively.
cplx tau_w(const FactoredInteger& n, cplx w);

/// tau_{it}(n), which is real.
double tau_it(const FactoredInteger& n, double t);

/// Same, reading log p from the table.
double tau_it(const FactoredInteger& n, double t, const SpfTable& table);

/// Euler's totient for 0..limit.
std::vector<std::uint32_t> totient_table(std::uint32_t limit);

struct RamanujanResult {
  cplx partial_sum;
  cplx zeta_product;
  double deviation;
};

/// Partial sums of sum_n tau_{it}(n) tau_{ir}(n) n^{-s} at each checkpoint
/// (ascending), compared with the four-zeta product over zeta(2s).
std::vector<RamanujanResult> ramanujan_checkpoints(const SpectralPoint& s, double t, double r,
                                                   const std::vector<long>& checkpoints);

/// Single-checkpoint form; requires Re s >= 1.5 and n_terms >= 1000.
RamanujanResult ramanujan_check(const SpectralPoint& s, double t, double r, long n_terms);

}  // namespace eisen
