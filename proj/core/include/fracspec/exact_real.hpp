#pragma once

#include "fracspec/roots.hpp"

#include <string>
#include <vector>

namespace fracspec {

/// A real algebraic number: either a rational, or the unique root of a
/// square-free rational polynomial inside an open rational interval.
/// Comparisons are exact; refinement never changes the value.
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(const Rational& q);  // NOLINT: rationals are exact reals
  explicit ExactReal(const IsolatedRoot& root);

  /// The root of p in (lo, hi); throws ValidationError unless there is exactly one.
  static ExactReal root_of(const Polynomial& p, const Rational& lo, const Rational& hi);

  bool is_rational() const { return lo_ == hi_; }
  /// Throws ValidationError for irrational values.
  const Rational& rational() const;
  /// Square-free polynomial with this value as a root (x - q for rationals).
  Polynomial polynomial() const;
  RationalInterval enclosure() const { return {lo_, hi_}; }

  /// Narrows the isolating interval to width <= 2^-bits.
  ExactReal refined(unsigned bits) const;
  Real approx(unsigned bits = kDefaultPrecisionBits) const;
  double to_double() const;

  /// Exact three-way comparison: -1, 0 or 1.
  int compare(const ExactReal& other) const;
  int sign() const;
  /// True when p vanishes at this value.
  bool is_root_of(const Polynomial& p) const;

  friend bool operator==(const ExactReal& a, const ExactReal& b) { return a.compare(b) == 0; }
  friend bool operator<(const ExactReal& a, const ExactReal& b) { return a.compare(b) < 0; }
  friend bool operator<=(const ExactReal& a, const ExactReal& b) { return a.compare(b) <= 0; }
  friend bool operator>(const ExactReal& a, const ExactReal& b) { return a.compare(b) > 0; }
  friend bool operator>=(const ExactReal& a, const ExactReal& b) { return a.compare(b) >= 0; }

  /// "p/q" for rationals, otherwise "root of <poly> in [lo, hi]".
  std::string to_string() const;

 private:
  Polynomial factor_;
  Rational lo_;
  Rational hi_;
};

/// Enclosure of f over the isolating interval of x refined to 2^-bits.
/// Exact (a point interval) when x is rational. Throws PoleError if the
/// enclosure cannot exclude a pole.
RationalInterval enclose_at(const RationalFunction& f, const ExactReal& x, unsigned bits);

/// All distinct real roots of p in [a, b] as exact values, sorted.
std::vector<ExactReal> exact_real_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Sorts and removes exact duplicates in place.
void sort_unique(std::vector<ExactReal>& values);

}  // namespace fracspec
