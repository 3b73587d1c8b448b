#include "fracspec/registry.hpp"
#include "fracspec/spacing.hpp"

#include <doctest.h>

using namespace fracspec;

namespace {

std::vector<ExactReal> exact(std::initializer_list<int> values) {
  std::vector<ExactReal> out;
  for (int v : values) out.emplace_back(Rational(v));
  return out;
}

}  // namespace

TEST_CASE("min spacing and gap ratios") {
  PrecisionGuard g(128);
  auto m = min_spacing({Real(0), Real(1), Real(3)});
  CHECK(m.gap == 1);
  CHECK(m.first == 0);
  CHECK(m.second == 1);
  CHECK_THROWS_AS(min_spacing({Real(1)}), ValidationError);
  auto r = gap_ratios({Real(1), Real(2), Real(3), Real(4)});
  REQUIRE(r.ratios.size() == 3);
  CHECK(r.ratios[0] == 2);
  CHECK(abs(r.ratios[1] - Real(3) / 2) < Real("1e-30"));
  CHECK(abs(r.ratios[2] - Real(4) / 3) < Real("1e-30"));
  CHECK(r.max_ratio == 2);
  CHECK(r.tail_max[1] == Real(3) / 2);
  CHECK_THROWS_AS(gap_ratios({Real(0), Real(1)}), ValidationError);
}

TEST_CASE("spacing report") {
  PrecisionGuard g(128);
  auto rep = spacing_report("test", {Real(4), Real(1), Real(9)});
  CHECK(rep.count == 3);
  CHECK(rep.min.gap == 3);
  REQUIRE(rep.ratios.has_value());
  CHECK(rep.ratios->max_ratio == 4);
  CHECK(spacing_report_to_csv(rep, 10).rfind("index,value,spacing,ratio\n", 0) == 0);
  CHECK(spacing_report_to_json(rep, 10).find("infimum over the computed truncation") != std::string::npos);
  CHECK_FALSE(spacing_report("zero", {Real(0), Real(1)}).ratios.has_value());
}

TEST_CASE("positive criterion on interval and sg") {
  const auto& reg = Registry::builtin();
  auto vi = positive_criterion(reg.get("interval"), exact({0, 2, 4}), 256);
  CHECK(vi.verdict == Verdict::positive_infimum);
  CHECK(vi.c0 == 2);
  CHECK(vi.max_abs_derivative.hi == 4);
  auto vs = positive_criterion(reg.get("sg"), exact({0, 2, 3, 5, 6}), 256);
  CHECK(vs.verdict == Verdict::positive_infimum);
  CHECK(vs.conditions.size() == 5);
  CHECK(vs.c0 == 1);
  CHECK(vs.max_abs_derivative.hi == 5);
  CHECK(verdict_to_json(vs, 12).find("\"PositiveInfimum\"") != std::string::npos);
}

TEST_CASE("positive criterion failures name the condition") {
  const auto& reg = Registry::builtin();
  auto missing = positive_criterion(reg.get("sg"), exact({0, 2, 5, 6}), 256);
  CHECK(missing.verdict == Verdict::inconclusive);
  CHECK(missing.failed == "d");
  auto inside = positive_criterion(reg.get("sg"), exact({0, 1, 2, 3, 5, 6}), 256);
  CHECK(inside.failed == "c");
  auto d0 = suggest_D0(reg.get("sg3"), sg3_spec(), 1, 1e-12);
  auto v3 = positive_criterion(reg.get("sg3"), d0.d0, 256);
  CHECK(v3.verdict == Verdict::inconclusive);
  CHECK(v3.failed == "e");
  CHECK_THROWS_AS(positive_criterion(reg.get("sg"), exact({2, 6}), 256), ValidationError);
  CHECK_THROWS_AS(positive_criterion(reg.get("sg"), exact({0, 5}), 256), ValidationError);
}

TEST_CASE("zero criterion") {
  const auto& reg = Registry::builtin();
  auto v3 = zero_criterion(reg.get("sg3"), 256);
  CHECK(v3.verdict == Verdict::zero_infimum);
  REQUIRE(v3.zeta.has_value());
  CHECK(v3.zeta->point.to_double() == doctest::Approx(1.3005726757500469).epsilon(1e-14));
  CHECK(v3.zeta->multiplier.lo > Rational(90, 7));
  CHECK(zero_criterion(reg.get("sg"), 256).verdict == Verdict::inconclusive);
  CHECK(zero_criterion(reg.get("interval"), 256).verdict == Verdict::inconclusive);
  CHECK(verdict_to_text(v3, 12).find("ZeroInfimum") != std::string::npos);
}

TEST_CASE("verdicts are exclusive") {
  const auto& reg = Registry::builtin();
  for (const auto& name : reg.names()) {
    const auto& s = reg.get(name);
    auto z = zero_criterion(s, 128);
    auto p = positive_criterion(s, suggest_D0(s, fractal_spec(s.fractal()), 1, 1e-12).d0, 128);
    CHECK_FALSE((z.verdict == Verdict::zero_infimum && p.verdict == Verdict::positive_infimum));
  }
}

TEST_CASE("lemma bound") {
  const auto& reg = Registry::builtin();
  auto rep = lemma_bound_check(reg.get("sg"), exact({0, 2, 3, 5, 6}), 6, 256);
  CHECK(rep.holds);
  REQUIRE(rep.levels.size() == 7);
  CHECK(rep.levels[0].min_spacing == 1);
  auto ri = lemma_bound_check(reg.get("interval"), exact({0, 2, 4}), 8, 256);
  CHECK(ri.holds);
  // D_n for the interval is {2 - 2 cos(k pi / 2^(n+1))}; its least gap is at the ends
  PrecisionGuard g(288);
  const Real pi = boost::multiprecision::acos(Real(-1));
  CHECK(abs(ri.levels[3].min_spacing - (2 - 2 * cos(pi / 16))) < Real("1e-30"));
  CHECK(ri.levels[3].size == 17);
  CHECK_THROWS_AS(lemma_bound_check(reg.get("sg3"), suggest_D0(reg.get("sg3"), sg3_spec(), 1, 1e-12).d0, 2, 128),
                  ValidationError);
}

TEST_CASE("spectrum spacing floor") {
  const auto& reg = Registry::builtin();
  auto ri = spacing_lower_bound_for_spectrum(reg.get("interval"), interval_spec(), Boundary::dirichlet,
                                             exact({0, 2, 4}), 5, 1e-9, 256);
  CHECK(ri.passed);
  for (auto bc : {Boundary::neumann, Boundary::dirichlet}) {
    auto rs = spacing_lower_bound_for_spectrum(reg.get("sg"), sg_spec(), bc, exact({0, 2, 3, 5, 6}), 4, 1e-9, 256);
    CHECK(rs.passed);
    for (const auto& lv : rs.levels) CHECK(lv.contained);
  }
}

TEST_CASE("zero spacing witness") {
  const auto& sg3 = Registry::builtin().get("sg3");
  PrecisionGuard g(288);
  auto rep = witness_sequence(sg3, Real(3) / 4, Real(1), 1, 6, 8, 256);
  REQUIRE(rep.points.size() == 7);
  for (std::size_t m = 1; m < rep.points.size(); ++m) {
    CHECK(rep.points[m].spacing < rep.points[m - 1].spacing);
    CHECK(rep.points[m].spacing > 0);
  }
  CHECK(rep.expected_ratio.convert_to<double>() == doctest::Approx(12.857142857142857 / 23.693526058789876));
  auto one = zero_spacing_witness(sg3, Real(3) / 4, Real(1), 1, 3, 8, 256);
  CHECK(abs(one.spacing - rep.points[3].spacing) < Real("1e-40"));
  CHECK_THROWS_AS(zero_spacing_witness(sg3, Real(1), Real(1), 1, 2, 8, 256), ValidationError);
  CHECK_THROWS_AS(witness_sequence(Registry::builtin().get("sg"), Real(1), Real(2), 1, 2, 2, 128), ValidationError);
}

TEST_CASE("suggested D0") {
  const auto& reg = Registry::builtin();
  auto sg = suggest_D0(reg.get("sg"), sg_spec(), 1, 1e-12);
  CHECK(sg.accepted);
  CHECK(sg.d0 == exact({0, 2, 3, 5, 6}));
  auto bare = suggest_D0(reg.get("interval"), interval_spec(), 0, 1e-12, false);
  CHECK(bare.d0 == exact({0, 4}));
  auto closed = suggest_D0(reg.get("interval"), interval_spec(), 0, 1e-12, true);
  CHECK(closed.d0 == exact({0, 2, 4}));
}
