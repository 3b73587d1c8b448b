#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracspec {

using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

/// Default mantissa width (bits) for the iteration layer.
inline constexpr unsigned kDefaultPrecisionBits = 256;

// ---------------------------------------------------------------------------
// Errors. Everything the library throws derives from Error so front ends can
// map failures to exit codes without catching std::exception wholesale.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or precondition violation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a rational function at one of its poles.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An iterative method exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A value falls outside the domain of a partial inverse or a registry range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Precision control for Real. boost's mpfr_float takes its working precision
// from a thread-local default; PrecisionGuard scopes that default.

unsigned bits_to_digits10(unsigned bits);
unsigned digits10_to_bits(unsigned digits10);

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

/// Current working precision in bits.
unsigned working_bits();

Real to_real(const Rational& q);
Real to_real(const Rational& q, unsigned bits);
/// Exact conversion; every finite binary float is a dyadic rational.
Rational to_rational(const Real& x);
Rational to_rational(double x);

/// Parses "p/q", "p", or a decimal literal such as "1.3" or "-2.5e-3" exactly.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Decimal rendering with a fixed number of significant digits.
std::string format_real(const Real& x, unsigned digits);
std::string format_real(const Real& x);

/// 2^-k as an exact rational.
Rational pow2_neg(unsigned k);
Rational rational_abs(const Rational& q);
int sign(const Rational& q);

// ---------------------------------------------------------------------------
// Closed rational intervals for certified enclosures.

struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval point(const Rational& v) { return {v, v}; }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  /// Strictly positive / strictly negative over the whole interval.
  bool positive() const { return sgn(lo) > 0; }
  bool negative() const { return sgn(hi) < 0; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  /// Throws PoleError when the divisor contains zero.
  friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);
  RationalInterval abs() const;
};

std::string format_interval(const RationalInterval& iv, unsigned digits = 20);

}  // namespace fracspec
