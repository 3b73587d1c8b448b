#include "fracspec/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace fracspec {

unsigned bits_to_digits10(unsigned bits) {
  return boost::multiprecision::detail::digits2_2_10(bits);
}

unsigned digits10_to_bits(unsigned digits10) {
  return boost::multiprecision::detail::digits10_2_2(digits10);
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(Real::default_precision()) {
  if (bits < 2) throw ValidationError("precision must be at least 2 bits");
  // digits10 rounding can lose a few bits; ask for enough digits to cover `bits`.
  unsigned d = bits_to_digits10(bits);
  while (digits10_to_bits(d) < bits) ++d;
  Real::default_precision(d);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_digits10_); }

unsigned working_bits() { return digits10_to_bits(Real::default_precision()); }

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Rational& q, unsigned bits) {
  PrecisionGuard guard(bits);
  return to_real(q);
}

Rational to_rational(const Real& x) {
  if (!mpfr_number_p(x.backend().data())) throw DomainError("non-finite value has no rational form");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x.backend().data());
  return q;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  Rational q(x);  // exact for binary doubles
  return q;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ValidationError("not an integer: '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return Rational(neg ? mpz_class(-z) : z);
}

Rational parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    exponent = static_cast<long>(parse_integer(s.substr(epos + 1)).get_num().get_si());
    s = s.substr(0, epos);
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    exponent -= static_cast<long>(s.size() - dot - 1);
  }
  if (digits.empty() || !all_digits(digits)) throw ValidationError("not a number: '" + std::string(s) + "'");
  mpz_class mant(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ValidationError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_integer(trim(std::string_view(s).substr(0, slash)));
    Rational den = parse_integer(trim(std::string_view(s).substr(slash + 1)));
    if (den == 0) throw ValidationError("zero denominator in '" + s + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  if (s.find_first_of(".eE") != std::string::npos) return parse_decimal(s);
  return parse_integer(s);
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_real(const Real& x, unsigned digits) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(std::max(1u, digits))) << std::scientific << x;
  return os.str();
}

std::string format_real(const Real& x) {
  // One decimal digit per ~3.32 bits, plus a guard digit.
  return format_real(x, bits_to_digits10(digits10_to_bits(x.precision())) + 1);
}

Rational pow2_neg(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Rational(mpz_class(1), den);
}

Rational rational_abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

int sign(const Rational& q) { return sgn(q); }

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return {*mn, *mx};
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
  if (b.contains_zero()) throw PoleError("interval division by an interval containing zero");
  RationalInterval inv{1 / b.hi, 1 / b.lo};
  return a * inv;
}

RationalInterval RationalInterval::abs() const {
  if (sgn(lo) >= 0) return *this;
  if (sgn(hi) <= 0) return {-hi, -lo};
  return {Rational(0), std::max(Rational(-lo), hi)};
}

std::string format_interval(const RationalInterval& iv, unsigned digits) {
  PrecisionGuard guard(digits10_to_bits(digits) + 8);
  return "[" + format_real(to_real(iv.lo), digits) + ", " + format_real(to_real(iv.hi), digits) + "]";
}

}  // namespace fracspec
