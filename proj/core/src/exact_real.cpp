#include "fracspec/exact_real.hpp"

#include <algorithm>

namespace fracspec {

ExactReal::ExactReal(const Rational& q) : lo_(q), hi_(q) {}

ExactReal::ExactReal(const IsolatedRoot& root) : lo_(root.lo), hi_(root.hi) {
  if (!root.exact()) factor_ = root.factor;
}

ExactReal ExactReal::root_of(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw ValidationError("isolating interval must have lo < hi");
  auto roots = isolate_real_roots(p, lo, hi);
  std::erase_if(roots, [&](const IsolatedRoot& r) { return r.exact() && (r.lo == lo || r.lo == hi); });
  if (roots.size() != 1) {
    throw ValidationError("polynomial " + p.to_string() + " has " + std::to_string(roots.size()) + " roots in (" +
                          format_rational(lo) + ", " + format_rational(hi) + "), expected exactly one");
  }
  return ExactReal(roots.front());
}

const Rational& ExactReal::rational() const {
  if (!is_rational()) throw ValidationError("value is irrational: " + to_string());
  return lo_;
}

Polynomial ExactReal::polynomial() const {
  if (is_rational()) return Polynomial{-lo_, Rational(1)};
  return factor_;
}

ExactReal ExactReal::refined(unsigned bits) const {
  if (is_rational() || hi_ - lo_ <= pow2_neg(bits)) return *this;
  IsolatedRoot r{factor_, lo_, hi_, 1};
  return ExactReal(refine_root(r, bits));
}

Real ExactReal::approx(unsigned bits) const {
  PrecisionGuard guard(std::max(bits, working_bits()));
  if (is_rational()) return to_real(lo_);
  return to_real(refined(bits + 8).enclosure().mid());
}

double ExactReal::to_double() const { return refined(60).enclosure().mid().get_d(); }

bool ExactReal::is_root_of(const Polynomial& p) const {
  if (p.is_zero()) return true;
  if (is_rational()) return p(lo_) == 0;
  Polynomial g = gcd(factor_, p);
  if (g.degree() < 1) return false;
  return SturmSequence(g).count(lo_, hi_) > 0;
}

int ExactReal::compare(const ExactReal& other) const {
  if (is_rational() && other.is_rational()) return lo_ < other.lo_ ? -1 : (lo_ == other.lo_ ? 0 : 1);
  if (other.is_rational()) {
    if (is_root_of(other.polynomial())) return 0;
  } else if (is_rational()) {
    if (other.is_root_of(polynomial())) return 0;
  } else {
    // Equal iff the gcd of the defining factors has a root in both intervals.
    Polynomial g = gcd(factor_, other.factor_);
    if (g.degree() >= 1) {
      Rational lo = std::max(lo_, other.lo_);
      Rational hi = std::min(hi_, other.hi_);
      if (lo < hi && SturmSequence(g).count(lo, hi) > 0) return 0;
    }
  }
  ExactReal a = *this;
  ExactReal b = other;
  for (unsigned bits = 16;; bits *= 2) {
    if (a.hi_ < b.lo_) return -1;
    if (b.hi_ < a.lo_) return 1;
    a = a.refined(bits);
    b = b.refined(bits);
  }
}

int ExactReal::sign() const { return compare(ExactReal(Rational(0))); }

std::string ExactReal::to_string() const {
  if (is_rational()) return format_rational(lo_);
  return "root of " + factor_.to_string() + " in [" + format_rational(lo_) + ", " + format_rational(hi_) + "]";
}

RationalInterval enclose_at(const RationalFunction& f, const ExactReal& x, unsigned bits) {
  if (x.is_rational()) return RationalInterval::point(f(x.rational()));
  for (unsigned b = bits;; b *= 2) {
    try {
      return f.enclose(x.refined(b).enclosure());
    } catch (const PoleError&) {
      if (x.is_root_of(f.denominator()) || b >= 8 * bits) throw;
    }
  }
}

void sort_unique(std::vector<ExactReal>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

std::vector<ExactReal> exact_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  std::vector<ExactReal> out;
  for (const auto& r : isolate_real_roots(p, a, b)) out.emplace_back(r);
  sort_unique(out);
  return out;
}

}  // namespace fracspec
