#include "fracspec/roots.hpp"

#include <algorithm>

namespace fracspec {

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) throw ValidationError("Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative());
  while (chain_.back().degree() > 0) {
    Polynomial r = chain_[chain_.size() - 2].divmod(chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back(-r);
  }
}

int SturmSequence::variations(const Rational& x) const {
  std::vector<int> s;
  s.reserve(chain_.size());
  for (const auto& q : chain_) s.push_back(sgn(q(x)));
  return sign_changes(s);
}

int SturmSequence::variations_at_infinity(bool positive) const {
  std::vector<int> s;
  for (const auto& q : chain_) {
    int lc = sgn(q.leading());
    s.push_back(positive || q.degree() % 2 == 0 ? lc : -lc);
  }
  return sign_changes(s);
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  if (b < a) return 0;
  return variations(a) - variations(b);
}

int SturmSequence::count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

Rational root_bound(const Polynomial& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational lc = rational_abs(p.leading());
  Rational mx = 0;
  for (int k = 0; k < p.degree(); ++k) mx = std::max(mx, Rational(rational_abs(p.coeff(static_cast<std::size_t>(k))) / lc));
  return 1 + mx;
}

namespace {

// Midpoint of (lo, hi) moved off any root of f.
Rational split_point(const Polynomial& f, const Rational& lo, const Rational& hi) {
  Rational m = (lo + hi) / 2;
  Rational step = (hi - lo) / 8;
  while (f(m) == 0) {
    m += step;
    step /= 2;
  }
  return m;
}

// Roots of the square-free f strictly inside (lo, hi); the endpoints may be roots.
void isolate_interior(const Polynomial& f, const SturmSequence& sturm, const Rational& lo, const Rational& hi, int mult,
                      std::vector<IsolatedRoot>& out) {
  const bool hi_root = f(hi) == 0;
  int n = sturm.count(lo, hi) - (hi_root ? 1 : 0);
  if (n == 0) return;
  if (n == 1 && !hi_root && f(lo) != 0) {
    out.push_back({f, lo, hi, mult});
    return;
  }
  Rational m = split_point(f, lo, hi);
  isolate_interior(f, sturm, lo, m, mult, out);
  isolate_interior(f, sturm, m, hi, mult, out);
}

}  // namespace

Rational simplest_between(Rational lo, Rational hi) {
  if (hi < lo) std::swap(lo, hi);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // Both in (fl, fl+1): recurse on reciprocals of the fractional parts.
  Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / inner;
}

std::vector<IsolatedRoot> isolate_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw ValidationError("root isolation of the zero polynomial");
  if (b < a) throw ValidationError("root isolation on an empty interval");
  std::vector<IsolatedRoot> out;
  auto factors = squarefree_factorization(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Polynomial& f = factors[i];
    if (f.degree() <= 0) continue;
    const int mult = static_cast<int>(i) + 1;
    if (f(a) == 0) out.push_back({f, a, a, mult});
    if (a == b) continue;
    SturmSequence sturm(f);
    isolate_interior(f, sturm, a, b, mult, out);
    if (f(b) == 0) out.push_back({f, b, b, mult});
  }
  std::sort(out.begin(), out.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
  return out;
}

IsolatedRoot refine_root(const IsolatedRoot& root, unsigned bits) {
  if (root.exact()) return root;
  IsolatedRoot r = root;
  const Polynomial& f = r.factor;
  const Rational target = pow2_neg(bits);
  const int s_lo = sgn(f(r.lo));

  // Narrows the bracket at x; true when x is the root itself.
  auto cut = [&](const Rational& x) -> bool {
    if (!(r.lo < x && x < r.hi)) return false;
    int s = sgn(f(x));
    if (s == 0) {
      r.lo = r.hi = x;
      return true;
    }
    (s == s_lo ? r.lo : r.hi) = x;
    return false;
  };

  const Rational start = r.hi - r.lo;
  while (r.hi - r.lo > start / 256 && r.hi - r.lo > target) {
    if (cut((r.lo + r.hi) / 2)) return r;
  }

  if (r.hi - r.lo > target) {
    PrecisionGuard guard(bits + 64);
    const Polynomial df = f.derivative();
    Rational x = (r.lo + r.hi) / 2;
    for (unsigned iter = 0; iter < 2 * bits + 64 && r.hi - r.lo > target; ++iter) {
      Real xr = to_real(x);
      Real d = df(xr);
      Rational cand = (r.lo + r.hi) / 2;
      Rational step = 0;
      if (d != 0) {
        Rational nx = to_rational(Real(xr - f(xr) / d));
        if (r.lo < nx && nx < r.hi) {
          cand = nx;
          step = rational_abs(nx - x);
        }
      }
      if (cut(cand)) return r;
      if (step > 0) {
        // Newton error is ~step^2; probing at a few multiples of step closes the far side.
        if (cut(cand - 2 * step) || cut(cand + 2 * step)) return r;
      }
      x = cand;
      if (!(r.lo < x && x < r.hi)) x = (r.lo + r.hi) / 2;
    }
    while (r.hi - r.lo > target) {
      if (cut((r.lo + r.hi) / 2)) return r;
    }
  }

  Rational simple = simplest_between(r.lo, r.hi);
  if (f(simple) == 0) r.lo = r.hi = simple;
  return r;
}

std::vector<IsolatedRoot> real_roots(const Polynomial& p, const Rational& a, const Rational& b, unsigned bits) {
  auto roots = isolate_real_roots(p, a, b);
  for (auto& r : roots) r = refine_root(r, bits);
  return roots;
}

int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  return static_cast<int>(isolate_real_roots(p, a, b).size());
}

}  // namespace fracspec
