#pragma once

#include "fracspec/polynomial.hpp"

#include <vector>

namespace fracspec {

/// Sturm chain of a square-free polynomial. Counts are exact integers.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);

  int variations(const Rational& x) const;
  int variations_at_infinity(bool positive) const;
  /// Number of distinct real roots in the half-open interval (a, b].
  int count(const Rational& a, const Rational& b) const;
  int count_all() const;

 private:
  std::vector<Polynomial> chain_;
};

/// A real root of `factor` (square-free) bracketed by rational endpoints.
/// Either lo == hi and the root is that rational, or lo < hi, the factor is
/// nonzero at both endpoints with opposite signs, and (lo, hi) holds exactly
/// one root of the factor.
struct IsolatedRoot {
  Polynomial factor;
  Rational lo;
  Rational hi;
  int multiplicity = 1;

  bool exact() const { return lo == hi; }
  RationalInterval enclosure() const { return {lo, hi}; }
};

/// Distinct real roots of p in the closed interval [a, b], sorted, isolated
/// but not refined. Multiplicities come from the square-free factorization.
std::vector<IsolatedRoot> isolate_real_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Shrinks the bracket to width <= 2^-bits: exact bisection down to 2^-8 of
/// the starting width, then Newton steps in extended precision with a
/// bisection fallback, each bracket update decided by an exact sign test.
IsolatedRoot refine_root(const IsolatedRoot& root, unsigned bits);

/// isolate_real_roots followed by refine_root on every root.
std::vector<IsolatedRoot> real_roots(const Polynomial& p, const Rational& a, const Rational& b, unsigned bits);

/// Distinct real roots in [a, b].
int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Rational with the smallest denominator in [lo, hi] (continued fractions).
Rational simplest_between(Rational lo, Rational hi);

/// Cauchy bound: every real root of p has |x| < bound.
Rational root_bound(const Polynomial& p);

}  // namespace fracspec
