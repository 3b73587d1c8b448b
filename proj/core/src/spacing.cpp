#include "fracspec/spacing.hpp"

#include "fracspec/laplacian.hpp"
#include "fracspec/registry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracspec {

MinSpacing min_spacing(const std::vector<Real>& v) {
  if (v.size() < 2) throw ValidationError("min_spacing needs at least two values");
  MinSpacing out{v[1] - v[0], 0, 1};
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    Real gap = v[k + 1] - v[k];
    if (gap < out.gap) out = {gap, k, k + 1};
  }
  return out;
}

GapRatios gap_ratios(const std::vector<Real>& v) {
  if (v.size() < 2) throw ValidationError("gap_ratios needs at least two values");
  for (const auto& x : v) {
    if (x <= 0) throw ValidationError("gap_ratios needs positive values");
  }
  GapRatios out;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) out.ratios.push_back(v[k + 1] / v[k]);
  out.tail_max.resize(out.ratios.size());
  Real running = out.ratios.back();
  for (std::size_t k = out.ratios.size(); k-- > 0;) {
    running = max(running, out.ratios[k]);
    out.tail_max[k] = running;
  }
  out.max_ratio = out.ratios[0];
  for (std::size_t k = 1; k < out.ratios.size(); ++k) {
    if (out.ratios[k] > out.max_ratio) {
      out.max_ratio = out.ratios[k];
      out.argmax = k;
    }
  }
  return out;
}

SpacingReport spacing_report(const std::string& source, std::vector<Real> values) {
  std::sort(values.begin(), values.end());
  SpacingReport r;
  r.source = source;
  r.count = values.size();
  r.min = min_spacing(values);
  for (std::size_t k = 0; k + 1 < values.size(); ++k) r.spacings.push_back(values[k + 1] - values[k]);
  if (values.front() > 0) r.ratios = gap_ratios(values);
  r.values = std::move(values);
  return r;
}

std::string spacing_report_to_json(const SpacingReport& r, unsigned digits) {
  nlohmann::json j;
  j["source"] = r.source;
  j["count"] = r.count;
  j["note"] = "infimum over the computed truncation";
  j["min_spacing"] = {{"gap", format_real(r.min.gap, digits)}, {"pair", {r.min.first, r.min.second}}};
  auto& sp = j["spacings"] = nlohmann::json::array();
  for (const auto& s : r.spacings) sp.push_back(format_real(s, digits));
  if (r.ratios) {
    auto& ra = j["gap_ratios"] = nlohmann::json::array();
    for (const auto& x : r.ratios->ratios) ra.push_back(format_real(x, digits));
    j["max_gap_ratio"] = format_real(r.ratios->max_ratio, digits);
    j["tail_max_gap_ratio"] = format_real(r.ratios->tail_max.back(), digits);
  }
  return j.dump(2);
}

std::string spacing_report_to_csv(const SpacingReport& r, unsigned digits) {
  std::ostringstream os;
  os << "index,value,spacing,ratio\n";
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    os << k << ',' << format_real(r.values[k], digits) << ',';
    if (k < r.spacings.size()) os << format_real(r.spacings[k], digits);
    os << ',';
    if (r.ratios && k < r.ratios->ratios.size()) os << format_real(r.ratios->ratios[k], digits);
    os << '\n';
  }
  return os.str();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::positive_infimum:
      return "PositiveInfimum";
    case Verdict::zero_infimum:
      return "ZeroInfimum";
    case Verdict::inconclusive:
      break;
  }
  return "Inconclusive";
}

namespace {

std::string approx_text(const ExactReal& x) {
  if (x.is_rational()) return format_rational(x.rational());
  if (ExactReal y = x.refined(64); y.is_rational()) return format_rational(y.rational());
  PrecisionGuard guard(96);
  return format_real(x.approx(96), 16);
}

std::string list_text(const std::vector<ExactReal>& xs) {
  std::string s = "{";
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + approx_text(xs[k]);
  return s + "}";
}

bool contains(const std::vector<ExactReal>& set, const ExactReal& x) {
  return std::any_of(set.begin(), set.end(), [&](const ExactReal& y) { return y == x; });
}

Rational outer_bound(const RationalFunction& r, const Rational& x_r) {
  Rational b = std::max({root_bound(r.numerator()), root_bound(r.level_set(x_r)), root_bound(r.denominator()),
                         rational_abs(x_r)});
  return b + 1;
}

std::vector<ExactReal> all_roots(const Polynomial& p, const Rational& bound) {
  if (p.degree() < 1) return {};
  return exact_real_roots(p, -bound, bound);
}

bool in_closed(const Rational& v, const Rational& x_r) { return v >= 0 && v <= x_r; }

// (a): no solution of R = 0 or R = x_r outside [0, x_r], and every pole-free
// component outside maps away from [0, x_r].
Condition condition_backward_invariant(const DecimationSystem& s) {
  Condition c{"a", "R^-1[0, x_r] is contained in [0, x_r]", true, ""};
  const auto& r = s.r();
  const Rational& x_r = s.x_r();
  const Rational bound = outer_bound(r, x_r);
  const ExactReal zero(Rational(0));
  const ExactReal top(x_r);
  std::vector<ExactReal> crossings = all_roots(r.numerator(), bound);
  for (auto& x : all_roots(r.level_set(x_r), bound)) crossings.push_back(x);
  for (const auto& x : crossings) {
    if (x < zero || x > top) {
      c.passed = false;
      c.certificate = "R(x) is 0 or x_r at x = " + approx_text(x) + " outside [0, x_r]";
      return c;
    }
  }
  std::vector<ExactReal> left{ExactReal(-bound)};
  std::vector<ExactReal> right{top};
  for (const auto& p : all_roots(r.denominator(), bound)) {
    if (p < zero) left.push_back(p);
    if (p > top) right.push_back(p);
  }
  left.push_back(zero);
  right.push_back(ExactReal(bound));
  std::vector<Rational> samples{-bound, bound};
  for (std::size_t k = 1; k + 1 < left.size(); ++k) samples.push_back(rational_between(left[k], left[k + 1]));
  for (std::size_t k = 0; k + 2 < right.size(); ++k) samples.push_back(rational_between(right[k], right[k + 1]));
  if (left.size() == 2) samples.push_back(rational_between(left[0], left[1]));
  if (right.size() == 2) samples.push_back(rational_between(right[0], right[1]));
  for (const auto& x : samples) {
    Rational v = r(x);
    if (in_closed(v, x_r)) {
      c.passed = false;
      c.certificate = "R(" + format_rational(x) + ") = " + format_rational(v) + " lies in [0, x_r]";
      return c;
    }
  }
  c.certificate = "all " + std::to_string(crossings.size()) +
                  " solutions of R(x) in {0, x_r} lie in [0, x_r]; R is outside [0, x_r] at the samples";
  for (const auto& x : samples) c.certificate += " " + format_rational(x);
  return c;
}

// (b): the branches tile [0, x_r] minus the poles with strictly monotone pieces.
Condition condition_branch_cover(const DecimationSystem& s) {
  Condition c{"b", "inverse branches cover R^-1[0, x_r]", true, ""};
  const auto& br = s.branches();
  bool ok = !br.empty() && br.front().source_lo.sign() == 0 && br.back().source_hi == ExactReal(s.x_r());
  for (std::size_t k = 0; ok && k + 1 < br.size(); ++k) ok = br[k].source_hi == br[k + 1].source_lo;
  for (const auto& b : br) {
    for (const auto& cp : s.critical_points()) {
      if (cp > b.source_lo && cp < b.source_hi) ok = false;
    }
  }
  c.passed = ok;
  c.certificate = std::to_string(br.size()) + " monotone branches:";
  for (const auto& b : br) c.certificate += " " + b.describe() + ";";
  if (!ok) c.certificate = "branch sources leave a gap or contain a critical point";
  return c;
}

// Decides whether R(d) lies in the open interval (0, x_r).
std::optional<bool> maps_inside(const DecimationSystem& s, const ExactReal& d, unsigned bits) {
  const auto& r = s.r();
  if (d.is_root_of(r.denominator())) return false;
  if (d.is_root_of(r.numerator()) || d.is_root_of(r.level_set(s.x_r()))) return false;
  for (unsigned b = bits; b <= 16 * bits; b *= 2) {
    RationalInterval v = enclose_at(r, d, b);
    if (v.hi < 0 || v.lo > s.x_r()) return false;
    if (v.lo > 0 && v.hi < s.x_r()) return true;
  }
  return std::nullopt;
}

Condition condition_disjoint(const DecimationSystem& s, const std::vector<ExactReal>& d0, unsigned bits) {
  Condition c{"c", "R^-1(0, x_r) and D0 are disjoint", true, "R(d) is not in (0, x_r) for every d in D0"};
  for (const auto& d : d0) {
    auto inside = maps_inside(s, d, bits);
    if (!inside.has_value()) {
      c.passed = false;
      c.certificate = "could not separate R(" + approx_text(d) + ") from the boundary of (0, x_r)";
      return c;
    }
    if (*inside) {
      c.passed = false;
      c.certificate = "R(" + approx_text(d) + ") lies in (0, x_r)";
      return c;
    }
  }
  return c;
}

std::vector<ExactReal> preimages_of_ends(const DecimationSystem& s) {
  const auto& r = s.r();
  auto out = exact_real_roots(r.numerator(), 0, s.x_r());
  for (auto& x : exact_real_roots(r.level_set(s.x_r()), 0, s.x_r())) out.push_back(x);
  sort_unique(out);
  return out;
}

Condition condition_ends(const DecimationSystem& s, const std::vector<ExactReal>& d0) {
  Condition c{"d", "R^-1{0, x_r} is contained in D0", true, ""};
  auto pre = preimages_of_ends(s);
  std::vector<ExactReal> missing;
  for (const auto& x : pre) {
    if (!contains(d0, x)) missing.push_back(x);
  }
  c.passed = missing.empty();
  c.certificate = c.passed ? "R^-1{0, x_r} = " + list_text(pre) : "missing from D0: " + list_text(missing);
  return c;
}

struct Piece {
  ExactReal lo;
  ExactReal hi;
};

// Closed pieces of R^-1[0, x_r], including isolated touching points.
std::vector<Piece> preimage_pieces(const DecimationSystem& s) {
  const auto& r = s.r();
  const ExactReal zero(Rational(0));
  const ExactReal top(s.x_r());
  std::vector<ExactReal> cuts = preimages_of_ends(s);
  cuts.push_back(zero);
  cuts.push_back(top);
  for (const auto& p : s.poles()) cuts.push_back(p);
  sort_unique(cuts);
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (contains(s.poles(), cuts[k]) || contains(s.poles(), cuts[k + 1])) continue;
    if (in_closed(r(rational_between(cuts[k], cuts[k + 1])), s.x_r())) {
      if (!pieces.empty() && pieces.back().hi == cuts[k]) {
        pieces.back().hi = cuts[k + 1];
      } else {
        pieces.push_back({cuts[k], cuts[k + 1]});
      }
    }
  }
  for (const auto& x : preimages_of_ends(s)) {
    bool covered = std::any_of(pieces.begin(), pieces.end(), [&](const Piece& p) { return p.lo <= x && x <= p.hi; });
    if (!covered) pieces.push_back({x, x});
  }
  return pieces;
}

Condition condition_derivative_max(const DecimationSystem& s, unsigned bits, RationalInterval& max_abs) {
  Condition c{"e", "R'(0) = max |R'| over R^-1[0, x_r]", false, ""};
  const Rational& c0 = s.c();
  auto pieces = preimage_pieces(s);
  for (unsigned b = bits; b <= 4 * bits; b *= 2) {
    Rational upper = 0;
    Rational lower = 0;
    ExactReal where;
    for (const auto& p : pieces) {
      Extremum e = extremum_of_derivative(s, p.lo, p.hi, b);
      Rational up = std::max(rational_abs(e.min_value.lo), rational_abs(e.max_value.hi));
      Rational low = std::max({Rational(0), e.max_value.lo, Rational(-e.min_value.hi)});
      if (up > upper) upper = up;
      if (low > lower) {
        lower = low;
        where = e.max_value.lo >= -e.min_value.hi ? e.argmax : e.argmin;
      }
    }
    max_abs = {lower, upper};
    if (upper <= c0) {
      c.passed = true;
      c.certificate = "max |R'| over " + std::to_string(pieces.size()) + " pieces is at most " +
                      format_rational(c0) + " = R'(0)" + (lower == upper ? " (exact)" : "");
      return c;
    }
    if (lower > c0) {
      c.certificate = "|R'| reaches at least " + format_interval({lower, lower}, 10) + " > R'(0) = " +
                      format_rational(c0) + " near x = " + approx_text(where);
      return c;
    }
  }
  c.certificate = "max |R'| enclosure " + format_interval(max_abs, 12) + " cannot be separated from R'(0) = " +
                  format_rational(c0);
  return c;
}

Real d0_spacing(const std::vector<ExactReal>& d0, unsigned bits) {
  PrecisionGuard guard(bits + 32);
  std::vector<Real> v;
  for (const auto& x : d0) v.push_back(x.approx(bits + 32));
  return min_spacing(v).gap;
}

}  // namespace

CriterionVerdict positive_criterion(const DecimationSystem& system, std::vector<ExactReal> d0, unsigned bits) {
  sort_unique(d0);
  if (d0.size() < 2) throw ValidationError("D0 needs at least two values");
  if (d0.front().sign() != 0) throw ValidationError("D0 must contain 0 as its least element");
  if (!(d0.back() == ExactReal(system.x_r()))) throw ValidationError("max D0 must equal x_r");
  CriterionVerdict v;
  v.criterion = "positive";
  v.system = system.name();
  v.c = system.c();
  v.d0 = d0;
  v.c0 = d0_spacing(d0, bits);
  v.conditions.push_back(condition_backward_invariant(system));
  v.conditions.push_back(condition_branch_cover(system));
  v.conditions.push_back(condition_disjoint(system, d0, bits));
  v.conditions.push_back(condition_ends(system, d0));
  v.conditions.push_back(condition_derivative_max(system, bits, v.max_abs_derivative));
  v.verdict = Verdict::positive_infimum;
  for (const auto& c : v.conditions) {
    if (!c.passed) {
      v.verdict = Verdict::inconclusive;
      v.failed = c.id;
      break;
    }
  }
  return v;
}

CriterionVerdict zero_criterion(const DecimationSystem& system, unsigned bits) {
  CriterionVerdict v;
  v.criterion = "zero";
  v.system = system.name();
  v.c = system.c();
  for (auto& fp : fixed_points(system, 0, system.x_r(), bits)) {
    if (fp.point.sign() > 0) v.fixed_points.push_back(fp);
  }
  Condition expanding{"z1", "R'(0) > 1", system.c() > 1, "R'(0) = " + format_rational(system.c())};
  Condition repelling{"z2", "some fixed point zeta in (0, x_r] has |R'(zeta)| > R'(0)", false, ""};
  const FixedPoint* best = nullptr;
  for (const auto& fp : v.fixed_points) {
    // fixed_points is sorted, so the largest repelling one wins
    if (fp.multiplier.lo > system.c()) best = &fp;
  }
  if (best != nullptr) {
    repelling.passed = true;
    v.zeta = *best;
    repelling.certificate = "zeta in " + format_interval(best->point.refined(bits).enclosure(), 12) +
                            ", |R'(zeta)| in " + format_interval(best->multiplier, 12) + " > " +
                            format_rational(system.c());
  } else {
    repelling.certificate = std::to_string(v.fixed_points.size()) + " positive fixed points, none with multiplier above R'(0)";
    for (const auto& fp : v.fixed_points) {
      repelling.certificate += "; " + approx_text(fp.point) + " has |R'| in " + format_interval(fp.multiplier, 10);
    }
  }
  v.conditions.push_back(expanding);
  v.conditions.push_back(repelling);
  v.verdict = Verdict::zero_infimum;
  for (const auto& c : v.conditions) {
    if (!c.passed) {
      v.verdict = Verdict::inconclusive;
      v.failed = c.id;
      break;
    }
  }
  return v;
}

std::string verdict_to_json(const CriterionVerdict& v, unsigned digits) {
  nlohmann::json j;
  j["criterion"] = v.criterion;
  j["system"] = v.system;
  j["verdict"] = to_string(v.verdict);
  j["c"] = format_rational(v.c);
  if (!v.failed.empty()) j["failed_condition"] = v.failed;
  auto& conds = j["conditions"] = nlohmann::json::array();
  for (const auto& c : v.conditions) {
    conds.push_back({{"id", c.id}, {"statement", c.statement}, {"passed", c.passed}, {"certificate", c.certificate}});
  }
  if (v.criterion == "positive") {
    auto& d0 = j["D0"] = nlohmann::json::array();
    for (const auto& x : v.d0) d0.push_back(nlohmann::json::parse(exact_to_json(x)));
    j["C0"] = format_real(v.c0, digits);
    j["max_abs_derivative"] = {format_rational(v.max_abs_derivative.lo), format_rational(v.max_abs_derivative.hi)};
  } else {
    auto& fps = j["fixed_points"] = nlohmann::json::array();
    for (const auto& fp : v.fixed_points) {
      auto iv = fp.point.refined(64).enclosure();
      fps.push_back({{"enclosure", {format_rational(iv.lo), format_rational(iv.hi)}},
                     {"approx", approx_text(fp.point)},
                     {"multiplier", {format_interval(fp.multiplier, digits)}}});
    }
    if (v.zeta) {
      auto iv = v.zeta->point.refined(64).enclosure();
      j["zeta"] = {{"enclosure", {format_rational(iv.lo), format_rational(iv.hi)}},
                   {"approx", approx_text(v.zeta->point)},
                   {"multiplier_lo", format_rational(v.zeta->multiplier.lo)},
                   {"multiplier_hi", format_rational(v.zeta->multiplier.hi)},
                   {"multiplier", format_interval(v.zeta->multiplier, digits)}};
    }
  }
  return j.dump(2);
}

std::string verdict_to_text(const CriterionVerdict& v, unsigned digits) {
  std::ostringstream os;
  os << v.criterion << " criterion for " << v.system << ": " << to_string(v.verdict) << "\n";
  os << "  R'(0) = " << format_rational(v.c) << "\n";
  for (const auto& c : v.conditions) {
    os << "  (" << c.id << ") " << (c.passed ? "pass" : "FAIL") << "  " << c.statement << "\n      " << c.certificate
       << "\n";
  }
  if (v.criterion == "positive") {
    os << "  D0 = " << list_text(v.d0) << ", C0 = " << format_real(v.c0, digits) << "\n";
  } else if (v.zeta) {
    os << "  zeta ~ " << approx_text(v.zeta->point) << ", |R'(zeta)| in " << format_interval(v.zeta->multiplier, digits)
       << "\n";
  }
  return os.str();
}

LemmaReport lemma_bound_check(const DecimationSystem& system, const std::vector<ExactReal>& d0, int n,
                              unsigned bits) {
  auto verdict = positive_criterion(system, d0, bits);
  if (verdict.verdict != Verdict::positive_infimum) {
    throw ValidationError("lemma bound check needs the positive criterion; condition (" + verdict.failed + ") fails");
  }
  PrecisionGuard guard(bits + 32);
  LemmaReport rep;
  rep.system = system.name();
  rep.c0 = verdict.c0;
  rep.slack = ldexp(Real(1), -static_cast<int>(bits / 2) + 2);
  const Real c = to_real(system.c());
  auto levels = preimage_levels(system, verdict.d0, n, bits);
  Real scale = 1;
  for (int k = 0; k <= n; ++k) {
    LemmaLevel lv;
    lv.n = k;
    lv.size = levels[static_cast<std::size_t>(k)].size();
    lv.min_spacing = min_spacing(levels[static_cast<std::size_t>(k)]).gap;
    lv.bound = rep.c0 / scale;
    lv.holds = lv.min_spacing >= lv.bound - rep.slack;
    rep.holds = rep.holds && lv.holds;
    rep.levels.push_back(lv);
    scale *= c;
  }
  return rep;
}

FloorReport spacing_lower_bound_for_spectrum(const DecimationSystem& system, const FractalSpec& spec, Boundary bc,
                                             const std::vector<ExactReal>& d0, int depth, double tol,
                                             unsigned bits) {
  auto verdict = positive_criterion(system, d0, bits);
  if (verdict.verdict != Verdict::positive_infimum) {
    throw ValidationError("spectrum spacing floor needs the positive criterion; condition (" + verdict.failed +
                          ") fails");
  }
  FloorReport rep;
  rep.system = system.name();
  rep.bc = bc;
  rep.c0 = verdict.c0.convert_to<double>();
  std::vector<std::vector<double>> dn;
  {
    PrecisionGuard guard(bits + 32);
    for (const auto& level : preimage_levels(system, verdict.d0, depth, bits)) {
      std::vector<double> v;
      for (const auto& x : level) v.push_back(x.convert_to<double>());
      dn.push_back(std::move(v));
    }
  }
  const double c = system.c().get_d();
  for (int n = 0; n <= depth; ++n) {
    if (bc == Boundary::dirichlet && n == 0) continue;
    FloorLevel lv;
    lv.n = n;
    auto sigma = level_spectrum(spec, n, system.convention(), bc, 1e-12).eigenvalues;
    lv.eigenvalues = sigma.size();
    for (double lambda : sigma) {
      double best = std::numeric_limits<double>::infinity();
      for (double x : dn[static_cast<std::size_t>(n)]) best = std::min(best, std::abs(lambda - x));
      lv.max_distance = std::max(lv.max_distance, best);
    }
    lv.contained = lv.max_distance <= tol;
    const double scale = std::pow(c, n);
    if (sigma.size() >= 2) {
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k + 1 < sigma.size(); ++k) gap = std::min(gap, sigma[k + 1] - sigma[k]);
      lv.renormalized_min_spacing = scale * gap;
      lv.floor_holds = lv.renormalized_min_spacing >= rep.c0 * (1 - 1e-9) - tol * scale;
    } else {
      lv.floor_holds = true;
    }
    rep.passed = rep.passed && lv.contained && lv.floor_holds;
    rep.levels.push_back(lv);
  }
  return rep;
}

namespace {

std::size_t zeta_branch_index(const DecimationSystem& system, const ExactReal& zeta) {
  const auto& br = system.branches();
  for (std::size_t k = 0; k < br.size(); ++k) {
    if (br[k].source_lo <= zeta && zeta <= br[k].source_hi) return k;
  }
  throw ValidationError("no inverse branch contains the fixed point");
}

FixedPoint require_zeta(const DecimationSystem& system, unsigned bits) {
  auto v = zero_criterion(system, bits);
  if (!v.zeta) throw ValidationError("system '" + system.name() + "' has no fixed point with |R'(zeta)| > R'(0)");
  return *v.zeta;
}

WitnessPoint witness_point(const DecimationSystem& system, const BranchInverter& phi_zeta,
                           const BranchInverter& phi0, const Real& x1, const Real& x2, int n0, int m, int j) {
  auto orbit = [&](Real x) {
    for (int k = 0; k < m; ++k) x = phi_zeta(x);
    for (int k = 0; k < j; ++k) x = phi0(x);
    return x;
  };
  const Real scale = pow(to_real(system.c()), n0 + j + m);
  WitnessPoint w;
  w.m = m;
  w.lambda1 = scale * orbit(x1);
  w.lambda2 = scale * orbit(x2);
  w.spacing = abs(w.lambda1 - w.lambda2);
  return w;
}

void check_witness_args(const Real& x1, const Real& x2, int n0, int m, int j) {
  if (x1 == x2) throw ValidationError("witness needs distinct x1 and x2");
  if (n0 < 0 || m < 0 || j < 0) throw ValidationError("witness levels must be nonnegative");
}

void check_in_target(const BranchInverse& branch, const Real& x1, const Real& x2) {
  for (const Real* x : {&x1, &x2}) {
    if (!branch.target_contains(*x, Real(0))) {
      throw ValidationError("witness value " + format_real(*x, 12) + " is outside the zeta branch target");
    }
  }
}

}  // namespace

WitnessPoint zero_spacing_witness(const DecimationSystem& system, const Real& x1, const Real& x2, int n0, int m,
                                  int j, unsigned bits) {
  check_witness_args(x1, x2, n0, m, j);
  PrecisionGuard guard(bits + 32);
  FixedPoint zeta = require_zeta(system, bits);
  const auto& branch = system.branches()[zeta_branch_index(system, zeta.point)];
  check_in_target(branch, x1, x2);
  BranchInverter phi_zeta(system, branch, bits);
  BranchInverter phi0(system, system.phi0(), bits);
  return witness_point(system, phi_zeta, phi0, x1, x2, n0, m, j);
}

WitnessReport witness_sequence(const DecimationSystem& system, const Real& x1, const Real& x2, int n0, int m_max,
                               int j, unsigned bits) {
  check_witness_args(x1, x2, n0, m_max, j);
  PrecisionGuard guard(bits + 32);
  WitnessReport rep;
  rep.zeta = require_zeta(system, bits);
  rep.zeta_branch = zeta_branch_index(system, rep.zeta.point);
  check_in_target(system.branches()[rep.zeta_branch], x1, x2);
  BranchInverter phi_zeta(system, system.branches()[rep.zeta_branch], bits);
  BranchInverter phi0(system, system.phi0(), bits);
  for (int m = 0; m <= m_max; ++m) rep.points.push_back(witness_point(system, phi_zeta, phi0, x1, x2, n0, m, j));
  for (std::size_t k = 0; k + 1 < rep.points.size(); ++k) rep.ratios.push_back(rep.points[k + 1].spacing / rep.points[k].spacing);
  rep.expected_ratio = to_real(system.c()) / to_real(rep.zeta.multiplier.mid());
  return rep;
}

D0Suggestion suggest_D0(const DecimationSystem& system, const FractalSpec& spec, int n, double tol, bool closure,
                        Boundary bc) {
  if (n < 0) throw ValidationError("level must be nonnegative");
  D0Suggestion out;
  auto sigma = level_spectrum(spec, n, system.convention(), bc, tol).eigenvalues;
  const Rational& x_r = system.x_r();
  std::vector<ExactReal> known = preimages_of_ends(system);
  known.push_back(ExactReal(Rational(0)));
  known.push_back(ExactReal(x_r));
  for (const auto& e : system.exceptional()) known.push_back(e);

  PrecisionGuard guard(128);
  const Real ident_tol(1e-7);
  std::vector<ExactReal> d0{ExactReal(Rational(0)), ExactReal(x_r)};
  for (double lambda : sigma) {
    if (system.is_exceptional(Real(lambda), Real(1e-8))) continue;
    Real v = lambda;
    for (int k = 0; k < n; ++k) v = system.r()(v);
    const Real res = ident_tol * max(Real(1), abs(v));
    if (v < -res || v > to_real(x_r) + res) {
      out.accepted = false;
      out.notes.push_back("R^" + std::to_string(n) + "(" + format_real(Real(lambda), 12) + ") = " + format_real(v, 12) +
                          " escapes [0, x_r]");
      continue;
    }
    std::optional<ExactReal> exact;
    for (const auto& k : known) {
      if (abs(v - k.approx(128)) <= res) {
        exact = k;
        break;
      }
    }
    if (!exact) {
      Rational q = simplest_between(to_rational(Real(v - res)), to_rational(Real(v + res)));
      if (q.get_den() <= 10000) exact = ExactReal(q);
    }
    if (!exact) {
      out.accepted = false;
      out.notes.push_back("could not identify " + format_real(v, 16) + " exactly");
      continue;
    }
    d0.push_back(*exact);
  }
  if (closure) {
    for (const auto& x : preimages_of_ends(system)) d0.push_back(x);
  }
  sort_unique(d0);
  out.d0 = std::move(d0);
  return out;
}

}  // namespace fracspec
