#include "fracspec/decimation.hpp"
#include "fracspec/registry.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace fracspec;

namespace {

DecimationConfig quadratic(const std::string& name, const Polynomial& num, const Rational& x_r) {
  DecimationConfig c;
  c.name = name;
  c.fractal = "interval";
  c.r = RationalFunction(num, Polynomial{1});
  c.x_r = x_r;
  c.level0_neumann = {ExactReal(Rational(0))};
  c.phi0_y0 = Rational(1, 2);
  c.phi0_eps = Rational(1, 2);
  return c;
}

}  // namespace

TEST_CASE("builtin systems") {
  const auto& reg = Registry::builtin();
  CHECK(reg.names() == std::vector<std::string>{"interval", "sg", "sg3"});
  CHECK(reg.get("interval").c() == 4);
  CHECK(reg.get("sg").c() == 5);
  CHECK(reg.get("sg3").c() == Rational(90, 7));
  CHECK(reg.get("sg3").x_r() == Rational(3, 2));
  CHECK_THROWS_AS(reg.get("carpet"), ValidationError);
}

TEST_CASE("branches") {
  const auto& sg = Registry::builtin().get("sg");
  REQUIRE(sg.branches().size() == 2);
  CHECK(sg.branches()[0].source_hi == ExactReal(Rational(5, 2)));
  CHECK(sg.branches()[0].increasing);
  CHECK_FALSE(sg.branches()[1].increasing);
  const auto& sg3 = Registry::builtin().get("sg3");
  CHECK(sg3.branches().size() == 4);
  REQUIRE(sg3.poles().size() == 1);
  CHECK(sg3.poles()[0] == ExactReal(Rational(7, 6)));
  auto crit = critical_points(sg3);
  REQUIRE(crit.size() == 2);
  CHECK(crit[0].to_double() == doctest::Approx(0.288097999799631));
  CHECK(crit[1].to_double() == doctest::Approx(0.890094308344629));
}

TEST_CASE("fixed points and multipliers") {
  const auto& reg = Registry::builtin();
  auto fi = fixed_points(reg.get("interval"), 0, 4, 64);
  REQUIRE(fi.size() == 2);
  CHECK(fi[1].point == ExactReal(Rational(3)));
  CHECK(fi[1].multiplier.lo == 2);
  auto fs = fixed_points(reg.get("sg"), 0, 6, 64);
  REQUIRE(fs.size() == 2);
  CHECK(fs[1].point == ExactReal(Rational(4)));
  CHECK(fs[1].multiplier.hi == 3);
  auto f3 = fixed_points(reg.get("sg3"), 0, Rational(3, 2), 96);
  REQUIRE(f3.size() == 4);
  const double points[] = {0, 0.61046055358855045723, 1.0889667706614026803, 1.3005726757500468625};
  const double mult[] = {12.857142857142857143, 4.7989460982552370907, 23.705420039465361229, 23.693526058789875862};
  for (int k = 0; k < 4; ++k) {
    CHECK(f3[k].point.to_double() == doctest::Approx(points[k]).epsilon(1e-14));
    CHECK(f3[k].multiplier.mid().get_d() == doctest::Approx(mult[k]).epsilon(1e-14));
  }
}

TEST_CASE("extrema of the sg3 derivative") {
  const auto& sg3 = Registry::builtin().get("sg3");
  auto e = extrema(sg3.dr(), Rational(6, 5), Rational(3, 2), 96);
  CHECK(e.min_value.mid().get_d() == doctest::Approx(23.54284937).epsilon(1e-9));
  CHECK(e.argmin.to_double() == doctest::Approx(1.314052).epsilon(1e-6));
  CHECK_THROWS_AS(extrema(sg3.r(), Rational(1), Rational(3, 2), 64), DomainError);
}

TEST_CASE("inverse branches and preimages") {
  const auto& reg = Registry::builtin();
  PrecisionGuard g(160);
  auto sg_pre = preimages(reg.get("sg"), Real(6), 128);
  REQUIRE(sg_pre.size() == 2);
  CHECK(abs(sg_pre[0] - 2) < Real("1e-35"));
  CHECK(abs(sg_pre[1] - 3) < Real("1e-35"));
  auto i_pre = preimages(reg.get("interval"), Real(4), 128);
  REQUIRE(i_pre.size() == 1);
  CHECK(abs(i_pre[0] - 2) < Real("1e-18"));
  // phi0 of the interval: 2 - sqrt(4 - y)
  auto x = apply_inverse(reg.get("interval"), reg.get("interval").phi0(), Real(1), 128);
  CHECK(abs(x - (2 - sqrt(Real(3)))) < Real("1e-35"));
  BranchInverter inv(reg.get("sg"), reg.get("sg").branches()[0], 128);
  CHECK_THROWS_AS(inv(Real(7)), DomainError);
}

TEST_CASE("preimage sets grow like 2^n") {
  const auto& sg = Registry::builtin().get("sg");
  std::vector<ExactReal> d0{Rational(0), Rational(2), Rational(3), Rational(5), Rational(6)};
  auto levels = preimage_levels(sg, d0, 3, 128);
  REQUIRE(levels.size() == 4);
  CHECK(levels[0].size() == 5);
  CHECK(levels[1].size() == 11);
  CHECK(levels[2].size() == 23);
}

TEST_CASE("validation of configurations") {
  CHECK_NOTHROW(DecimationSystem(quadratic("ok", Polynomial{0, 4, -1}, 4)));
  CHECK_THROWS_AS(DecimationSystem(quadratic("r0", Polynomial{1, 4, -1}, 4)), ValidationError);
  CHECK_THROWS_AS(DecimationSystem(quadratic("slow", Polynomial{0, Rational(1, 2), -1}, Rational(1, 4))),
                  ValidationError);
  auto bad = quadratic("exc", Polynomial{0, 4, -1}, 4);
  bad.exceptional = {ExactReal(Rational(0))};
  CHECK_THROWS_AS(DecimationSystem{bad}, ValidationError);
}

TEST_CASE("registry json round trip") {
  auto sqrt5 = ExactReal::root_of(Polynomial{4, -24, 16}, Rational(3, 16), Rational(1, 5));
  CHECK(exact_from_json(exact_to_json(sqrt5)) == sqrt5);
  CHECK(exact_from_json("\"3/4\"") == ExactReal(Rational(3, 4)));
  CHECK_THROWS_AS(Registry::from_json("{\"systems\": 3}"), ValidationError);
  CHECK_THROWS_AS(Registry::from_json("not json"), ValidationError);
  CHECK_THROWS_AS(Registry::from_file("/nonexistent/registry.json"), ValidationError);
}

TEST_CASE("registry file matches the built-in copy") {
  auto file = Registry::from_file(FRACSPEC_REGISTRY_FILE);
  const auto& builtin = Registry::builtin();
  REQUIRE(file.names() == builtin.names());
  for (const auto& name : file.names()) {
    CHECK(file.get(name).r() == builtin.get(name).r());
    CHECK(file.get(name).x_r() == builtin.get(name).x_r());
    CHECK(file.get(name).exceptional().size() == builtin.get(name).exceptional().size());
  }
  std::ifstream in(FRACSPEC_REGISTRY_FILE);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == builtin_registry_json());
}

TEST_CASE("exceptional sets include the poles") {
  const auto& sg3 = Registry::builtin().get("sg3");
  PrecisionGuard g(128);
  CHECK(sg3.is_exceptional(Real(7) / 6, Real("1e-20")));
  CHECK(sg3.is_exceptional(Real(3) / 4, Real("1e-20")));
  CHECK_FALSE(sg3.is_exceptional(Real(1), Real("1e-20")));
}

TEST_CASE("evaluation of the sg3 map") {
  const auto& sg3 = Registry::builtin().get("sg3");
  CHECK(sg3.r()(Rational(0)) == 0);
  CHECK(sg3.r()(Rational(1)) == 0);
  CHECK_THROWS_AS(sg3.r()(Rational(7, 6)), PoleError);
  CHECK(RationalFunction(Polynomial{5}).derivative() == RationalFunction(Polynomial{}));
  auto zeros = exact_real_roots(sg3.r().numerator(), 0, Rational(3, 2));
  CHECK(zeros == std::vector<ExactReal>{Rational(0), Rational(3, 4), Rational(1), Rational(5, 4)});
  CHECK(real_roots(Polynomial{1, 0, 1}, -10, 10, 64).empty());
  // R(x) - x has its root just above 1.3, none in (5/4, 13/10)
  auto fixed = sg3.r().level_set(0) - Polynomial{0, 1} * sg3.r().denominator();
  CHECK(count_real_roots(fixed, Rational(5, 4), Rational(13, 10)) == 0);
  CHECK(count_real_roots(fixed, Rational(5, 4), Rational(131, 100)) == 1);
}

TEST_CASE("critical points of the quadratic maps") {
  const auto& reg = Registry::builtin();
  CHECK(critical_points(reg.get("interval")) == std::vector<ExactReal>{Rational(2)});
  CHECK(critical_points(reg.get("sg")) == std::vector<ExactReal>{Rational(5, 2)});
}

TEST_CASE("phi0 at the branch ends") {
  const auto& reg = Registry::builtin();
  PrecisionGuard g(160);
  for (const auto& name : reg.names()) {
    const auto& s = reg.get(name);
    CHECK(apply_inverse(s, s.phi0(), Real(0), 128) == 0);
  }
  const auto& i = reg.get("interval");
  CHECK(abs(apply_inverse(i, i.phi0(), Real(4), 128) - 2) < Real("1e-18"));
  const auto& sg = reg.get("sg");
  CHECK(abs(apply_inverse(sg, sg.phi0(), Real(6), 128) - 2) < Real("1e-35"));
}

TEST_CASE("preimage sets of zero") {
  const auto& reg = Registry::builtin();
  PrecisionGuard g(160);
  CHECK(preimage_set(reg.get("sg"), {ExactReal(Rational(0))}, 0, 128) == std::vector<Real>{Real(0)});
  auto d1 = preimage_set(reg.get("sg3"), {ExactReal(Rational(0))}, 1, 128);
  REQUIRE(d1.size() == 4);
  const Real expect[] = {Real(0), Real(3) / 4, Real(1), Real(5) / 4};
  for (int k = 0; k < 4; ++k) CHECK(abs(d1[k] - expect[k]) < Real("1e-30"));
}

TEST_CASE("extrema of quadratic derivatives") {
  const auto& reg = Registry::builtin();
  auto sg = extremum_of_derivative(reg.get("sg"), Rational(0), Rational(1), 64);
  CHECK(sg.max_value.lo == 5);
  CHECK(sg.argmax == ExactReal(Rational(0)));
  auto iv = extremum_of_derivative(reg.get("interval"), Rational(0), Rational(2), 64);
  CHECK(iv.min_value.hi == 0);
  CHECK(iv.argmin == ExactReal(Rational(2)));
}
