#include "fracspec/exact_real.hpp"

#include <doctest.h>

using namespace fracspec;

TEST_CASE("parse and format rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2.5e-3") == Rational(-1, 400));
  CHECK(parse_rational("1.3") == Rational(13, 10));
  CHECK(format_rational(Rational(90, 7)) == "90/7");
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
}

TEST_CASE("to_rational is exact on binary floats") {
  CHECK(to_rational(0.375) == Rational(3, 8));
  CHECK(pow2_neg(10) == Rational(1, 1024));
}

TEST_CASE("interval arithmetic") {
  RationalInterval a{1, 2};
  RationalInterval b{-1, 3};
  auto p = a * b;
  CHECK(p.lo == -2);
  CHECK(p.hi == 6);
  CHECK_THROWS_AS(a / b, PoleError);
  CHECK((a - a).contains_zero());
}

TEST_CASE("polynomial arithmetic and gcd") {
  Polynomial p{-1, 0, 1};  // x^2 - 1
  Polynomial q{1, 1};      // x + 1
  auto [quot, rem] = p.divmod(q);
  CHECK(quot == Polynomial{-1, 1});
  CHECK(rem.is_zero());
  CHECK(gcd(p, Polynomial{1, 2, 1}) == q);
  CHECK(p.derivative() == Polynomial{0, 2});
  CHECK(p(Rational(3)) == 8);
}

TEST_CASE("square-free factorization") {
  // (x - 1)^2 (x + 2)
  Polynomial p = Polynomial{-1, 1} * Polynomial{-1, 1} * Polynomial{2, 1};
  auto f = squarefree_factorization(p);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == Polynomial{2, 1});
  CHECK(f[1] == Polynomial{-1, 1});
  CHECK(squarefree_part(p) == Polynomial{-2, 1, 1});
}

TEST_CASE("rational function normal form and derivative") {
  RationalFunction r(Polynomial{0, 4, -1}, Polynomial{1});
  CHECK(r.derivative() == RationalFunction(Polynomial{4, -2}, Polynomial{1}));
  RationalFunction s(Polynomial{-1, 0, 1}, Polynomial{2, 2});  // (x^2 - 1) / (2x + 2) = (x - 1) / 2
  CHECK(s == RationalFunction(Polynomial{Rational(-1, 2), Rational(1, 2)}, Polynomial{1}));
  CHECK_THROWS_AS(RationalFunction(Polynomial{1}, Polynomial{0, 1})(Rational(0)), PoleError);
  CHECK(r.level_set(4) == Polynomial{-4, 4, -1});
}

TEST_CASE("sturm counts") {
  Polynomial p{-2, 0, 1};  // roots +-sqrt 2
  SturmSequence s(p);
  CHECK(s.count_all() == 2);
  CHECK(s.count(0, 2) == 1);
  CHECK(s.count(-2, 2) == 2);
  CHECK(count_real_roots(Polynomial{1, 0, 1}, -10, 10) == 0);
}

TEST_CASE("root isolation handles rational and endpoint roots") {
  // (x^2 - 2)(3x - 1) x
  Polynomial p = Polynomial{-2, 0, 1} * Polynomial{-1, 3} * Polynomial{0, 1};
  auto roots = isolate_real_roots(p, 0, 2);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].exact());
  CHECK(roots[0].lo == 0);
  auto third = refine_root(roots[1], 64);
  CHECK(third.exact());
  CHECK(third.lo == Rational(1, 3));
  auto r2 = refine_root(roots[2], 140);
  PrecisionGuard g(200);
  Real sqrt2("1.41421356237309504880168872420969807856967187537694");
  CHECK(abs(to_real(r2.lo) - sqrt2) < Real("1e-40"));
  CHECK(r2.hi - r2.lo <= pow2_neg(140));
}

TEST_CASE("simplest rational between") {
  CHECK(simplest_between(Rational(3, 10), Rational(2, 5)) == Rational(1, 3));
  CHECK(simplest_between(Rational(1, 2), Rational(1, 2)) == Rational(1, 2));
  CHECK(simplest_between(Rational(-7, 4), Rational(-3, 2)) == Rational(-3, 2));
}

TEST_CASE("exact reals compare exactly") {
  auto sqrt2 = ExactReal::root_of(Polynomial{-2, 0, 1}, 1, 2);
  CHECK(sqrt2 > ExactReal(Rational(141421356, 100000000)));
  CHECK(sqrt2 < ExactReal(Rational(141421357, 100000000)));
  // the same number from a different polynomial: (x^2 - 2)(x - 5)
  auto again = ExactReal::root_of(Polynomial{-2, 0, 1} * Polynomial{-5, 1}, Rational(13, 10), Rational(3, 2));
  CHECK(sqrt2 == again);
  CHECK(sqrt2.is_root_of(Polynomial{-2, 0, 1}));
  CHECK_FALSE(sqrt2.is_root_of(Polynomial{-3, 0, 1}));
  CHECK(sqrt2.to_double() == doctest::Approx(1.4142135623730951));
  CHECK_THROWS_AS(ExactReal::root_of(Polynomial{-2, 0, 1}, -2, 2), ValidationError);
}

TEST_CASE("exact real roots and sort_unique") {
  // 4x^2 - 6x + 1: (3 +- sqrt 5) / 4
  auto r = exact_real_roots(Polynomial{1, -6, 4}, 0, 2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].to_double() == doctest::Approx(0.19098300562505258));
  CHECK(r[1].to_double() == doctest::Approx(1.3090169943749475));
  std::vector<ExactReal> v{r[1], ExactReal(Rational(1, 2)), r[0], r[1]};
  sort_unique(v);
  REQUIRE(v.size() == 3);
  CHECK(v[1] == ExactReal(Rational(1, 2)));
}

TEST_CASE("enclose_at tightens with bits") {
  auto sqrt2 = ExactReal::root_of(Polynomial{-2, 0, 1}, 1, 2);
  RationalFunction f(Polynomial{0, 0, 1}, Polynomial{1});
  auto iv = enclose_at(f, sqrt2, 80);
  CHECK(iv.contains(2));
  CHECK(iv.width() < pow2_neg(70));
}
