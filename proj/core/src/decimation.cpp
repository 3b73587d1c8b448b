#include "fracspec/decimation.hpp"

#include <algorithm>
#include <limits>

namespace fracspec {

std::string to_string(Convention c) { return c == Convention::combinatorial ? "combinatorial" : "probabilistic"; }
std::string to_string(Boundary b) { return b == Boundary::dirichlet ? "dirichlet" : "neumann"; }

Convention parse_convention(const std::string& name) {
  if (name == "combinatorial") return Convention::combinatorial;
  if (name == "probabilistic") return Convention::probabilistic;
  throw ValidationError("unknown convention '" + name + "' (expected combinatorial or probabilistic)");
}

Boundary parse_boundary(const std::string& name) {
  if (name == "dirichlet") return Boundary::dirichlet;
  if (name == "neumann") return Boundary::neumann;
  throw ValidationError("unknown boundary condition '" + name + "' (expected dirichlet or neumann)");
}

namespace {

constexpr unsigned kStructureBits = 320;

Real infinity() { return std::numeric_limits<Real>::infinity(); }

std::vector<ExactReal> roots_between(const Polynomial& p, const ExactReal& a, const ExactReal& b) {
  if (p.degree() < 1) return {};
  auto roots = exact_real_roots(p, a.enclosure().lo, b.enclosure().hi);
  std::erase_if(roots, [&](const ExactReal& r) { return r < a || r > b; });
  return roots;
}

}  // namespace

bool BranchInverse::target_contains(const Real& y, const Real& slack) const {
  return y >= target_lo - slack && y <= target_hi + slack;
}

std::string BranchInverse::describe() const {
  PrecisionGuard guard(64);
  std::string s = pole_lo ? "(" : "[";
  s += format_real(source_lo.approx(64), 12) + ", " + format_real(source_hi.approx(64), 12);
  s += pole_hi ? ")" : "]";
  s += increasing ? " increasing onto " : " decreasing onto ";
  s += "[" + format_real(target_lo, 12) + ", " + format_real(target_hi, 12) + "]";
  return s;
}

Rational rational_between(const ExactReal& a, const ExactReal& b) {
  if (!(a < b)) throw ValidationError("rational_between needs a < b");
  if (a.is_rational() && b.is_rational()) return (a.rational() + b.rational()) / 2;
  for (unsigned bits = 16;; bits *= 2) {
    RationalInterval x = a.refined(bits).enclosure();
    RationalInterval y = b.refined(bits).enclosure();
    if (x.hi < y.lo) return (x.hi + y.lo) / 2;
  }
}

Extremum extrema(const RationalFunction& f, const ExactReal& a, const ExactReal& b, unsigned bits) {
  if (b < a) throw ValidationError("extrema on an empty interval");
  if (!roots_between(f.denominator(), a, b).empty()) throw DomainError("pole inside the interval " + a.to_string() + " .. " + b.to_string());
  std::vector<ExactReal> candidates{a, b};
  for (auto& r : roots_between(f.derivative().numerator(), a, b)) candidates.push_back(r);

  Extremum out;
  bool first = true;
  for (const auto& x : candidates) {
    RationalInterval v = enclose_at(f, x, bits);
    if (first) {
      out = {v, v, x, x};
      first = false;
      continue;
    }
    if (v.lo < out.min_value.lo) out.argmin = x;
    if (v.hi > out.max_value.hi) out.argmax = x;
    out.min_value = {std::min(out.min_value.lo, v.lo), std::min(out.min_value.hi, v.hi)};
    out.max_value = {std::max(out.max_value.lo, v.lo), std::max(out.max_value.hi, v.hi)};
  }
  return out;
}

DecimationSystem::DecimationSystem(DecimationConfig config) : config_(std::move(config)) {
  const auto& r = config_.r;
  const std::string who = "system '" + config_.name + "': ";
  if (r.denominator()(Rational(0)) == 0) throw ValidationError(who + "R has a pole at 0");
  if (r(Rational(0)) != 0) throw ValidationError(who + "R(0) must be 0");
  dr_ = r.derivative();
  c_ = dr_(Rational(0));
  if (c_ <= 1) throw ValidationError(who + "R'(0) must exceed 1");
  if (config_.x_r <= 0) throw ValidationError(who + "x_r must be positive");
  for (const auto& e : config_.exceptional) {
    if (e.sign() == 0) throw ValidationError(who + "0 cannot be exceptional");
  }

  const ExactReal zero(Rational(0));
  const ExactReal top(config_.x_r);
  critical_ = roots_between(dr_.numerator(), zero, top);
  poles_ = roots_between(r.denominator(), zero, top);
  for (const auto& p : poles_) {
    if (std::none_of(config_.exceptional.begin(), config_.exceptional.end(), [&](const ExactReal& e) { return e == p; }))
      config_.exceptional.push_back(p);
  }

  std::vector<std::pair<ExactReal, bool>> cuts;  // (point, is pole)
  cuts.emplace_back(zero, false);
  for (const auto& p : critical_) {
    if (p > zero && p < top) cuts.emplace_back(p, false);
  }
  for (const auto& p : poles_) {
    if (p < top) cuts.emplace_back(p, true);
  }
  cuts.emplace_back(top, !poles_.empty() && poles_.back() == top);
  std::sort(cuts.begin(), cuts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  PrecisionGuard guard(kStructureBits);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    BranchInverse b;
    b.source_lo = cuts[k].first;
    b.source_hi = cuts[k + 1].first;
    b.pole_lo = cuts[k].second;
    b.pole_hi = cuts[k + 1].second;
    b.increasing = sgn(dr_(rational_between(b.source_lo, b.source_hi))) > 0;
    auto end_value = [&](const ExactReal& x, bool pole, bool at_lo) -> Real {
      if (pole) return (b.increasing == at_lo) ? Real(-infinity()) : infinity();
      return to_real(enclose_at(r, x, kStructureBits).mid());
    };
    Real v_lo = end_value(b.source_lo, b.pole_lo, true);
    Real v_hi = end_value(b.source_hi, b.pole_hi, false);
    b.target_lo = b.increasing ? v_lo : v_hi;
    b.target_hi = b.increasing ? v_hi : v_lo;
    branches_.push_back(std::move(b));
  }
  const auto& p0 = branches_.front();
  if (!p0.increasing) throw ValidationError(who + "phi0 branch must be increasing");
  if (p0.target_hi < to_real(config_.x_r)) throw ValidationError(who + "phi0 target does not cover [0, x_r]");

  // phi0 contraction certificate.
  const Rational& y0 = config_.phi0_y0;
  const Rational& eps = config_.phi0_eps;
  if (y0 <= 0 || ExactReal(y0) > p0.source_hi) throw ValidationError(who + "phi0 y0 must lie in phi0's source");
  if (eps <= 0 || c_ - eps <= 1) throw ValidationError(who + "phi0 eps must satisfy 0 < eps < c - 1");
  auto [quot, rem] = r.numerator().divmod(Polynomial::x());
  RationalFunction g(quot, r.denominator());
  Extremum g_near = extrema(g, zero, ExactReal(y0), kStructureBits);
  if (g_near.min_value.lo < c_ - eps) {
    throw ValidationError(who + "R(x) >= (c - eps) x fails on [0, y0]; min R(x)/x is about " +
                          format_interval(g_near.min_value, 12));
  }
  Extremum dg = extrema(g.derivative(), zero, ExactReal(y0), kStructureBits);
  tail_constant_ = std::max(rational_abs(dg.min_value.lo), rational_abs(dg.max_value.hi)) / (c_ - eps);
  Extremum g_all = extrema(g, zero, p0.source_hi, kStructureBits);
  pruning_certified_ = g_all.max_value.hi <= c_;
}

const std::vector<ExactReal>& DecimationSystem::level0(Boundary bc) const {
  return bc == Boundary::neumann ? config_.level0_neumann : config_.level0_dirichlet;
}

std::vector<ExactReal> DecimationSystem::births(Boundary bc, int level) const {
  std::vector<ExactReal> out;
  for (const auto& rule : config_.offspring) {
    if (rule.active(bc, level)) out.push_back(rule.value);
  }
  sort_unique(out);
  return out;
}

bool DecimationSystem::is_exceptional(const Real& x, const Real& resolution) const {
  for (const auto& e : config_.exceptional) {
    // Cheap rejection through the isolating interval before refining.
    RationalInterval iv = e.enclosure();
    if (x < to_real(iv.lo) - resolution || x > to_real(iv.hi) + resolution) continue;
    if (abs(x - e.approx(working_bits())) <= resolution) return true;
  }
  return false;
}

Extremum extremum_of_derivative(const DecimationSystem& system, const ExactReal& a, const ExactReal& b,
                                unsigned bits) {
  return extrema(system.dr(), a, b, bits);
}

std::vector<FixedPoint> fixed_points(const DecimationSystem& system, const Rational& a, const Rational& b,
                                     unsigned bits) {
  const auto& r = system.r();
  Polynomial eq = r.numerator() - Polynomial::x() * r.denominator();
  std::vector<FixedPoint> out;
  for (auto& p : exact_real_roots(eq, a, b)) {
    RationalInterval m = enclose_at(system.dr(), p, bits).abs();
    out.push_back({p, m});
  }
  return out;
}

std::vector<ExactReal> critical_points(const DecimationSystem& system) { return system.critical_points(); }

// ---------------------------------------------------------------------------

BranchInverter::BranchInverter(const DecimationSystem& system, const BranchInverse& branch, unsigned bits)
    : branch_(&branch), bits_(bits) {
  PrecisionGuard guard(bits + 32);
  for (const auto& q : system.r().numerator().coeffs()) num_.push_back(to_real(q));
  for (const auto& q : system.r().denominator().coeffs()) den_.push_back(to_real(q));
  lo_ = branch.source_lo.approx(bits + 32);
  hi_ = branch.source_hi.approx(bits + 32);
}

Real BranchInverter::value(const Real& x) const {
  Real p = 0;
  for (auto it = num_.rbegin(); it != num_.rend(); ++it) p = p * x + *it;
  Real q = 0;
  for (auto it = den_.rbegin(); it != den_.rend(); ++it) q = q * x + *it;
  return p / q;
}

Real BranchInverter::slope(const Real& x) const {
  Real p = 0, dp = 0;
  for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  Real q = 0, dq = 0;
  for (auto it = den_.rbegin(); it != den_.rend(); ++it) {
    dq = dq * x + q;
    q = q * x + *it;
  }
  return (dp * q - p * dq) / (q * q);
}

Real BranchInverter::operator()(const Real& y_in) const {
  PrecisionGuard guard(bits_ + 32);
  const Real y = y_in;
  const Real scale = max(Real(1), abs(y));
  const Real slack = ldexp(scale, -static_cast<int>(bits_ / 2));
  if (!branch_->target_contains(y, slack)) {
    throw DomainError("value " + format_real(y, 20) + " outside the branch target " + branch_->describe());
  }
  const int dir = branch_->increasing ? 1 : -1;
  auto f = [&](const Real& x) { return value(x) - y; };
  auto side = [&](const Real& fx) { return fx > 0 ? 1 : (fx < 0 ? -1 : 0); };

  // Step from a pole end toward the interior until R passes y.
  auto approach = [&](const Real& pole, const Real& other, int want) {
    Real h = (other - pole) / 2;
    for (unsigned k = 0; k < bits_ + 64; ++k) {
      Real x = pole + h;
      if (side(f(x)) == want || f(x) == 0) return x;
      h /= 2;
    }
    throw ConvergenceError("could not bracket the preimage near a pole");
  };
  Real a = branch_->pole_lo ? approach(lo_, hi_, -dir) : lo_;
  Real b = branch_->pole_hi ? approach(hi_, lo_, dir) : hi_;
  Real fa = f(a);
  Real fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (side(fa) == side(fb)) return abs(fa) < abs(fb) ? a : b;  // y sits on a target endpoint

  const Real res_tol = ldexp(scale, -static_cast<int>(bits_) - 16);
  for (int k = 0; k < 8; ++k) {
    Real m = (a + b) / 2;
    Real fm = f(m);
    if (fm == 0) return m;
    if (side(fm) == side(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  Real x = (a + b) / 2;
  for (unsigned iter = 0; iter < 4 * bits_ + 200; ++iter) {
    Real fx = f(x);
    if (abs(fx) <= res_tol) return x;
    if (side(fx) == side(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    if (b - a <= ldexp(max(Real(1), abs(x)), -static_cast<int>(bits_))) return (a + b) / 2;
    Real d = slope(x);
    Real nx = d != 0 ? Real(x - fx / d) : Real((a + b) / 2);
    if (!(nx > a && nx < b)) nx = (a + b) / 2;
    x = nx;
  }
  throw ConvergenceError("branch inversion did not converge");
}

Real apply_inverse(const DecimationSystem& system, const BranchInverse& branch, const Real& y, unsigned bits) {
  return BranchInverter(system, branch, bits)(y);
}

namespace {

class PreimageSolver {
 public:
  PreimageSolver(const DecimationSystem& system, unsigned bits) : bits_(bits) {
    for (const auto& b : system.branches()) inverters_.emplace_back(system, b, bits);
    branches_ = &system.branches();
  }

  std::vector<Real> operator()(const Real& y) const {
    const Real slack = ldexp(max(Real(1), abs(y)), -static_cast<int>(bits_ / 2));
    std::vector<Real> out;
    for (std::size_t k = 0; k < inverters_.size(); ++k) {
      if ((*branches_)[k].target_contains(y, slack)) out.push_back(inverters_[k](y));
    }
    return out;
  }

 private:
  unsigned bits_;
  std::vector<BranchInverter> inverters_;
  const std::vector<BranchInverse>* branches_;
};

}  // namespace

std::vector<Real> preimages(const DecimationSystem& system, const Real& y, unsigned bits) {
  PrecisionGuard guard(bits + 32);
  auto out = PreimageSolver(system, bits)(y);
  sort_dedup(out, ldexp(Real(1), -static_cast<int>(bits / 2)));
  return out;
}

void sort_dedup(std::vector<Real>& values, const Real& resolution) {
  std::sort(values.begin(), values.end());
  std::vector<Real> out;
  out.reserve(values.size());
  for (auto& v : values) {
    if (out.empty() || v - out.back() > resolution) out.push_back(std::move(v));
  }
  values = std::move(out);
}

std::vector<Real> preimage_set(const DecimationSystem& system, const std::vector<ExactReal>& d0, int n,
                               unsigned bits) {
  return preimage_levels(system, d0, n, bits).back();
}

std::vector<std::vector<Real>> preimage_levels(const DecimationSystem& system, const std::vector<ExactReal>& d0,
                                               int n, unsigned bits) {
  if (n < 0) throw ValidationError("preimage depth must be nonnegative");
  PrecisionGuard guard(bits + 32);
  const Real resolution = ldexp(Real(1), -static_cast<int>(bits / 2));
  const ExactReal zero(Rational(0));
  const ExactReal top(system.x_r());
  std::vector<Real> all;
  for (const auto& v : d0) {
    if (v < zero || v > top) throw ValidationError("D0 value " + v.to_string() + " outside [0, x_r]");
    all.push_back(v.approx(bits + 32));
  }
  sort_dedup(all, resolution);
  PreimageSolver solve(system, bits);
  std::vector<Real> fresh = all;
  std::vector<std::vector<Real>> levels{all};
  for (int k = 1; k <= n; ++k) {
    std::vector<Real> next;
    for (const auto& y : fresh) {
      for (auto& x : solve(y)) next.push_back(std::move(x));
    }
    sort_dedup(next, resolution);
    fresh.clear();
    for (auto& x : next) {
      auto it = std::lower_bound(all.begin(), all.end(), x - resolution);
      if (it == all.end() || *it - x > resolution) fresh.push_back(x);
    }
    all.insert(all.end(), fresh.begin(), fresh.end());
    sort_dedup(all, resolution);
    levels.push_back(all);
  }
  return levels;
}

}  // namespace fracspec
