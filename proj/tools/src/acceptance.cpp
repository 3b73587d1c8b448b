#include "acceptance.hpp"

#include "fracspec/laplacian.hpp"
#include "fracspec/limit.hpp"
#include "fracspec/perturbation.hpp"
#include "fracspec/spacing.hpp"

#include <boost/math/constants/constants.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracspec::app {

namespace {

struct Check {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "[fail] ";
    }
    detail << what << "; ";
  }
};

std::string fmt(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string fmt(const Real& x, int digits = 10) { return format_real(x, static_cast<unsigned>(digits)); }

std::vector<Real> limit_values(const GeneratedSpectrum& s) {
  std::vector<Real> out;
  for (const auto& v : s.values) out.push_back(v.value);
  return out;
}

// Both directions of the set comparison.
double set_distance(const std::vector<double>& a, const std::vector<double>& b) {
  auto one_way = [](const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0.0;
    for (double x : from) {
      double best = INFINITY;
      for (double y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.empty() || b.empty()) return a.size() == b.size() ? 0.0 : INFINITY;
  return std::max(one_way(a, b), one_way(b, a));
}

void sg3_derivative(const Registry& reg, Check& c) {
  const auto& s = reg.get("sg3");
  const RationalFunction displayed(Polynomial{630, -3948, 7740, -6144, 1728}, Polynomial{49, -84, 36});
  c.require(s.dr() == displayed, "R' = " + s.dr().to_string());
  c.require(s.c() == Rational(90, 7), "R'(0) = " + format_rational(s.c()));
}

void sg3_derivative_min(const Registry& reg, Check& c) {
  const auto& s = reg.get("sg3");
  auto e = extrema(s.dr(), Rational(6, 5), Rational(3, 2), 96);
  const double lo = e.min_value.lo.get_d();
  const double hi = e.min_value.hi.get_d();
  c.require(std::abs(lo - 25.5428) <= 1e-3 && std::abs(hi - 25.5428) <= 1e-3,
            "min R' on [1.2, 1.5] in [" + fmt(lo) + ", " + fmt(hi) + "] at x ~ " + fmt(e.argmin.to_double()) +
                ", expected 25.5428 +- 1e-3");
}

void sg3_fixed_point(const Registry& reg, Check& c) {
  const auto& s = reg.get("sg3");
  auto fps = fixed_points(s, Rational(5, 4), Rational(13, 10), 128);
  std::vector<FixedPoint> inside;
  for (const auto& fp : fps) {
    if (fp.point > ExactReal(Rational(5, 4)) && fp.point < ExactReal(Rational(13, 10))) inside.push_back(fp);
  }
  std::string where;
  for (const auto& fp : fixed_points(s, 0, s.x_r(), 128)) where += " " + fmt(fp.point.to_double());
  c.require(inside.size() == 1,
            std::to_string(inside.size()) + " fixed points in (1.25, 1.3); fixed points in [0, 3/2]:" + where);
  if (inside.size() == 1) {
    c.require(inside[0].multiplier.lo > s.c(), "multiplier " + format_interval(inside[0].multiplier, 10) + " > 90/7");
  }
  auto v = zero_criterion(s, 256);
  c.require(v.verdict == Verdict::zero_infimum, "zero criterion: " + to_string(v.verdict));
}

void sg3_spectra(const Registry& reg, Check& c) {
  const auto& s = reg.get("sg3");
  const unsigned bits = 128;
  PrecisionGuard guard(bits + 32);
  const Real r5 = sqrt(Real(5));
  for (int n = 1; n <= 2; ++n) {
    std::vector<Real> zeros{Real(0)};
    for (int k = 0; k < n; ++k) {
      std::vector<Real> next;
      for (const auto& y : zeros) {
        for (auto& x : preimages(s, y, bits)) next.push_back(x);
      }
      zeros = std::move(next);
    }
    std::vector<Real> golden{(3 - r5) / 4, (3 + r5) / 4};
    for (int k = 0; k + 1 < n; ++k) {
      std::vector<Real> next;
      for (const auto& y : golden) {
        for (auto& x : preimages(s, y, bits)) next.push_back(x);
      }
      golden = std::move(next);
    }
    std::vector<double> formula{1.5};
    for (const auto& x : zeros) formula.push_back(x.convert_to<double>());
    for (const auto& x : golden) formula.push_back(x.convert_to<double>());
    std::sort(formula.begin(), formula.end());
    formula = cluster(formula, 1e-12);
    auto spec = level_spectrum(fractal_spec("sg3"), n, Convention::probabilistic, Boundary::neumann, 1e-12);
    const double dist = set_distance(spec.eigenvalues, formula);
    c.require(dist <= 1e-9, "n=" + std::to_string(n) + ": " + std::to_string(spec.eigenvalues.size()) +
                                " distinct eigenvalues vs " + std::to_string(formula.size()) +
                                " formula values, set distance " + fmt(dist, 4));
  }
}

void interval_spectrum(const Registry& reg, Check& c) {
  const auto& s = reg.get("interval");
  PrecisionGuard guard(kDefaultPrecisionBits + 32);
  const Real pi2 = pow(boost::math::constants::pi<Real>(), 2);
  SpectrumOptions o;
  o.count = 8;
  o.bc = Boundary::dirichlet;
  auto dir = limit_values(generate_spectrum(s, o));
  Real worst = 0;
  for (std::size_t k = 0; k < dir.size(); ++k) {
    const Real expect = pi2 * (k + 1) * (k + 1);
    worst = max(worst, abs(dir[k] - expect) / expect);
  }
  c.require(dir.size() == 8 && worst <= 1e-6, "Dirichlet first 8 vs pi^2 k^2: max relative error " + fmt(worst, 4));
  if (dir.size() >= 2) {
    Real gap = min_spacing(dir).gap;
    c.require(abs(gap - 3 * pi2) <= 1e-6, "Dirichlet min spacing " + fmt(gap, 12) + " vs 3 pi^2");
  }
  o.bc = Boundary::neumann;
  auto neu = limit_values(generate_spectrum(s, o));
  if (neu.size() >= 2) {
    Real gap = min_spacing(neu).gap;
    c.require(abs(gap - pi2) <= 1e-6, "Neumann min spacing " + fmt(gap, 12) + " vs pi^2");
  } else {
    c.require(false, "Neumann spectrum has fewer than two values");
  }
}

void lemma_bound(const Registry& reg, Check& c) {
  const std::vector<std::pair<std::string, std::vector<Rational>>> cases{{"interval", {0, 2, 4}},
                                                                        {"sg", {0, 2, 3, 5, 6}}};
  for (const auto& [name, values] : cases) {
    const auto& s = reg.get(name);
    std::vector<ExactReal> d0(values.begin(), values.end());
    auto v = positive_criterion(s, d0, 256);
    c.require(v.verdict == Verdict::positive_infimum, name + " positive criterion: " + to_string(v.verdict));
    if (v.verdict != Verdict::positive_infimum) continue;
    auto rep = lemma_bound_check(s, d0, 6, 256);
    double worst = INFINITY;
    for (const auto& lv : rep.levels) worst = std::min(worst, (lv.min_spacing / lv.bound).convert_to<double>());
    c.require(rep.holds, name + " min spacing of D_n / (C0 / R'(0)^n) >= " + fmt(worst, 6) + " for n <= 6, |D_6| = " +
                             std::to_string(rep.levels.back().size));
  }
}

void decimation_containment(const Registry& reg, Check& c) {
  const std::vector<std::pair<std::string, int>> cases{{"interval", 6}, {"sg", 4}, {"sg3", 2}};
  for (const auto& [name, top] : cases) {
    const auto& s = reg.get(name);
    double worst = 0.0;
    bool ok = true;
    for (auto bc : {Boundary::neumann, Boundary::dirichlet}) {
      for (int m = 1; m <= top; ++m) {
        auto r = verify_decimation(fractal_spec(s.fractal()), m, s, bc, 1e-9);
        ok = ok && r.passed && r.max_distance < 1e-9;
        worst = std::max(worst, r.max_distance);
      }
    }
    c.require(ok, name + " m <= " + std::to_string(top) + " max distance " + fmt(worst, 3));
  }
}

void witness(const Registry& reg, Check& c) {
  const auto& s = reg.get("sg3");
  PrecisionGuard guard(288);
  auto rep = witness_sequence(s, Real(3) / 4, Real(1), 1, 6, 8, 256);
  bool decreasing = true;
  for (std::size_t k = 0; k + 1 < rep.points.size(); ++k) decreasing = decreasing && rep.points[k + 1].spacing < rep.points[k].spacing;
  c.require(decreasing, "spacings " + fmt(rep.points.front().spacing, 6) + " ... " + fmt(rep.points.back().spacing, 6) +
                            " strictly decreasing over m = 0..6");
  Real worst = 0;
  for (std::size_t m = 4; m < rep.points.size(); ++m) worst = max(worst, abs(rep.ratios[m - 1] - rep.expected_ratio));
  c.require(worst < Real(0.1), "ratios for m >= 4 within " + fmt(worst, 4) + " of c/|R'(zeta)| = " +
                                   fmt(rep.expected_ratio, 8));
}

void wielandt(const Registry&, Check& c) {
  auto trials = wielandt_trials(10, 4, 1000, 1, 0.1, 1e-10);
  std::size_t violations = 0;
  double worst_top = INFINITY;
  double worst_bottom = INFINITY;
  for (const auto& t : trials) {
    violations += t.violation ? 1 : 0;
    worst_top = std::min(worst_top, t.worst_margin_top);
    worst_bottom = std::min(worst_bottom, t.worst_margin_bottom);
  }
  c.require(violations == 0, std::to_string(trials.size()) + " trials, " + std::to_string(violations) +
                                 " violations, worst margins " + fmt(worst_top, 3) + " / " + fmt(worst_bottom, 3));
  double worst = 0.0;
  bool bounded = true;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    Matrix b(2, 2);
    b(0, 1) = b(1, 0) = eps;
    auto rep = wielandt_check(Matrix::diagonal({2, 0}), b, 1, 1e-12);
    const double exact = eps * eps / (std::sqrt(1 + eps * eps) + 1);  // sqrt(1 + eps^2) - 1
    for (const auto& w : rep.indices) {
      worst = std::max(worst, std::abs(w.shift - exact) / exact);
      bounded = bounded && w.holds && std::abs(w.bound - eps * eps / 2) <= 1e-15;
    }
  }
  c.require(worst <= 1e-9 && bounded,
            "2x2 shifts match sqrt(1 + eps^2) - 1 to relative " + fmt(worst, 3) + " under the bound eps^2 / 2");
}

void sg_stability(const Registry& reg, Check& c) {
  const auto& sg = reg.get("sg");
  for (auto bc : {Boundary::dirichlet, Boundary::neumann}) {
    SpectrumOptions o;
    o.bc = bc;
    o.count = 30;
    o.bits = 128;
    o.tol = 1e-12;
    auto first = generate_spectrum(sg, o);
    SpectrumOptions doubled = o;
    doubled.bits = 2 * o.bits;
    doubled.min_depth = 2 * first.depth;
    auto second = generate_spectrum(sg, doubled);
    PrecisionGuard guard(doubled.bits + 32);
    auto a = limit_values(first);
    auto b = limit_values(second);
    if (a.size() < 30 || b.size() < 30) {
      c.require(false, "SG " + to_string(bc) + " truncation has fewer than 30 eigenvalues");
      continue;
    }
    const Real ga = min_spacing(a).gap;
    const Real gb = min_spacing(b).gap;
    const Real rel = abs(ga - gb) / gb;
    c.require(ga > 0 && rel < Real(1e-8), "SG " + to_string(bc) + " min spacing " + fmt(ga, 12) + " at depth " +
                                              std::to_string(first.depth) + ", relative change " + fmt(rel, 3) +
                                              " at depth " + std::to_string(second.depth));
  }
  const auto& sg3 = reg.get("sg3");
  std::vector<Real> gaps;
  std::string trail;
  for (int depth = 1; depth <= 4; ++depth) {
    SpectrumOptions o;
    o.bc = Boundary::neumann;
    o.max_depth = depth;
    o.bits = 128;
    auto values = limit_values(generate_spectrum(sg3, o));
    PrecisionGuard guard(160);
    gaps.push_back(values.size() >= 2 ? min_spacing(values).gap : Real(INFINITY));
    trail += " " + fmt(gaps.back(), 6);
  }
  bool decreasing = true;
  for (std::size_t k = 0; k + 1 < gaps.size(); ++k) decreasing = decreasing && gaps[k + 1] < gaps[k];
  c.require(decreasing, "SG3 Neumann min spacing at depth 1..4:" + trail);
}

using Runner = void (*)(const Registry&, Check&);

const std::vector<Runner>& runners() {
  static const std::vector<Runner> r{sg3_derivative, sg3_derivative_min, sg3_fixed_point, sg3_spectra,
                                     interval_spectrum, lemma_bound, decimation_containment, witness,
                                     wielandt, sg_stability};
  return r;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list{
      {1, "sg3-derivative", "SG3 derivative identity and R'(0) = 90/7", 1},
      {2, "sg3-derivative-min", "SG3 min of R' over [1.2, 1.5] = 25.5428 +- 1e-3", 1},
      {3, "sg3-fixed-point", "SG3 single repelling fixed point in (1.25, 1.3)", 1},
      {4, "sg3-spectra", "SG3 Neumann spectra match the preimage formula for n = 1, 2", 30},
      {5, "interval-spectrum", "interval limits pi^2 k^2 and spacings 3 pi^2, pi^2", 10},
      {6, "lemma-bound", "D_n spacing >= C0 / R'(0)^n for interval and SG, n <= 6", 60},
      {7, "decimation", "decimation containment within 1e-9", 60},
      {8, "witness", "SG3 zero-spacing witness decay", 10},
      {9, "wielandt", "Wielandt shift bounds on 1000 trials and the 2x2 case", 30},
      {10, "sg-stability", "truncated spectrum spacing stability", 120},
  };
  return list;
}

const CriterionInfo& find_criterion(const std::string& id_or_key) {
  for (const auto& info : criteria()) {
    if (info.key == id_or_key || std::to_string(info.id) == id_or_key) return info;
  }
  std::string known;
  for (const auto& info : criteria()) known += " " + info.key;
  throw ValidationError("unknown example '" + id_or_key + "'; known:" + known + " (or 1-10, all)");
}

CriterionOutcome run_criterion(const CriterionInfo& info, const Registry& registry) {
  CriterionOutcome out;
  out.info = info;
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    runners().at(static_cast<std::size_t>(info.id - 1))(registry, check);
  } catch (const std::exception& e) {
    check.require(false, std::string("error: ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.seconds > info.budget_seconds) check.require(false, "runtime over budget");
  out.passed = check.passed;
  out.detail = check.detail.str();
  if (out.detail.size() >= 2) out.detail.resize(out.detail.size() - 2);
  return out;
}

std::string outcome_line(const CriterionOutcome& o) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d %-20s (%.2f s / %g s)  ", o.passed ? "PASS" : "FAIL", o.info.id,
                o.info.key.c_str(), o.seconds, o.info.budget_seconds);
  return head + o.detail;
}

}  // namespace fracspec::app
