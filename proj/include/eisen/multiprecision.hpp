#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <mutex>

namespace eisen {

using MpReal = boost::multiprecision::mpfr_float;
using MpComplex = std::complex<MpReal>;

/// Sets the MPFR working precision (decimal digits) for the lifetime of the
/// scope. Boost keeps the default precision in a process-wide static, so the
/// scope also serializes extended-precision sections across threads.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned digits() const noexcept { return digits_; }

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned digits_;
  unsigned previous_;
};

/// B_{2k} at the current MPFR precision, from an exact rational table.
MpReal bernoulli_b2n_mp(int k);

/// B_{2k} in double / long double precision.
double bernoulli_b2n_double(int k);
long double bernoulli_b2n_long_double(int k);

/// Largest k for which bernoulli_b2n_mp is available.
inline constexpr int kMaxBernoulliIndex = 260;

}  // namespace eisen
