#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace wdvv {

namespace mp = boost::multiprecision;

/// Exact arbitrary-precision rational (GMP-backed, kept in lowest terms).
using Rational = mp::mpq_rational;

/// Exact arbitrary-precision integer.
using BigInt = mp::mpz_int;

/// Arbitrary-precision real with runtime-selectable precision (MPFR-backed).
/// Each value carries its own precision; new values are allocated at the
/// thread's current default precision (see PrecisionScope).
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Signals an internally inconsistent data structure (e.g. a coefficient
/// table whose entries violate an exact integrality identity).
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Signals a failure reading or writing a data file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Decimal working precision governing all floating evaluation.
class PrecisionContext {
 public:
  static constexpr unsigned kMinDigits = 16;
  static constexpr unsigned kDefaultDigits = 890;

  PrecisionContext() = default;
  explicit PrecisionContext(unsigned digits) : digits_(digits) {
    if (digits < kMinDigits)
      throw std::invalid_argument("PrecisionContext: need at least " +
                                  std::to_string(kMinDigits) +
                                  " digits, got " + std::to_string(digits));
  }

  unsigned digits() const { return digits_; }

 private:
  unsigned digits_ = kDefaultDigits;
};

/// Installs a working precision for Real values constructed in the current
/// scope and restores the previous default on exit. Values constructed under
/// the scope keep their precision after it ends.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx)
      : previous_(Real::default_precision()) {
    Real::default_precision(ctx.digits());
  }
  ~PrecisionScope() { Real::default_precision(previous_); }

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// n! as an exact integer.
BigInt factorial(unsigned long n);

/// Fresh Real at the current default precision.
inline Real to_real(const Rational& q) { return Real(q); }

/// Copy of x re-rounded to the thread's current default precision. Copy
/// construction preserves the source precision, so API entry points use this
/// to bring caller-supplied values under the active PrecisionScope.
inline Real at_current_precision(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

/// Deterministic decimal rendering with the given significant digit count.
inline std::string decimal(const Real& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits));
}

}  // namespace wdvv
