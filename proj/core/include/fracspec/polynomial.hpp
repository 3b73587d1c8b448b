#pragma once

#include "fracspec/numeric.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace fracspec {

/// Univariate polynomial over Q, coefficients in ascending degree.
/// The coefficient vector never has a trailing zero; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  /// The monomial x.
  static Polynomial x();

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational leading() const;
  Rational coeff(std::size_t k) const;

  Rational operator()(const Rational& x) const;
  Real operator()(const Real& x) const;
  RationalInterval enclose(const RationalInterval& x) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// Primitive integer-free scaling is not needed; this just negates.
  Polynomial operator-() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws ValidationError on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  std::string to_string(const char* var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// p / gcd(p, p').
Polynomial squarefree_part(const Polynomial& p);

/// Yun's square-free factorization: factors[i] has multiplicity i+1 in p.
std::vector<Polynomial> squarefree_factorization(const Polynomial& p);

/// Quotient of polynomials in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction();
  RationalFunction(const Polynomial& p);  // NOLINT: polynomials are rational functions
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  /// Throws PoleError where the denominator vanishes.
  Rational operator()(const Rational& x) const;
  Real operator()(const Real& x) const;
  RationalInterval enclose(const RationalInterval& x) const;

  RationalFunction derivative() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// num - y * den: its roots are the solutions of f(x) = y away from poles.
  Polynomial level_set(const Rational& y) const;

  std::string to_string(const char* var = "x") const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace fracspec
