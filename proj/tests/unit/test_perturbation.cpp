#include "fracspec/perturbation.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracspec;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  }
  return m;
}

}  // namespace

TEST_CASE("generator is the documented 64-bit LCG") {
  TrialEngine e(1);
  CHECK(e() == 6364136223846793005ULL + 1442695040888963407ULL);
  TrialEngine f(0);
  CHECK(uniform01(f) == static_cast<double>(1442695040888963407ULL >> 11) * 0x1.0p-53);
}

TEST_CASE("spectral projectors") {
  auto p = spectral_projectors(Matrix::diagonal({3, 2, 1}), 1, 1e-12);
  Matrix e1(3, 3);
  e1(0, 0) = 1;
  CHECK(max_abs_diff(p.top, e1) < 1e-14);
  CHECK(max_abs_diff(p.top + p.bottom, Matrix::identity(3)) < 1e-14);
  CHECK(max_abs_diff(p.top * p.top, p.top) < 1e-14);
  CHECK(p.gap == doctest::Approx(1.0));
  auto q = spectral_projectors(Matrix::diagonal({1, 1, 0}), 2, 1e-12);
  CHECK(q.gap == doctest::Approx(1.0));
  CHECK_THROWS_AS(spectral_projectors(Matrix::diagonal({1, 1, 1}), 1, 1e-12), ValidationError);
  CHECK_THROWS_AS(spectral_projectors(Matrix::diagonal({2, 1}), 2, 1e-12), ValidationError);
}

TEST_CASE("admissible perturbations") {
  TrialEngine e(7);
  auto a = random_symmetric(10, e);
  auto zero = make_admissible_perturbation(a, 4, 42, 0.0, 1e-10);
  CHECK(zero.frobenius_norm() == 0.0);
  auto b = make_admissible_perturbation(a, 4, 42, 0.05, 1e-10);
  CHECK(spectral_norm_symmetric(b) == doctest::Approx(0.05).epsilon(1e-10));
  auto p = spectral_projectors(a, 4, 1e-10);
  CHECK(admissibility_residual(p, b) < 1e-12);
  auto again = make_admissible_perturbation(a, 4, 42, 0.05, 1e-10);
  CHECK(max_abs_diff(b, again) == 0.0);
}

TEST_CASE("zero perturbation does not move the spectrum") {
  TrialEngine e(3);
  auto a = random_symmetric(6, e);
  auto rep = wielandt_check(a, Matrix(6, 6), 2, 1e-10);
  CHECK(rep.passed());
  for (const auto& w : rep.indices) CHECK(std::abs(w.shift) < 1e-12);
}

TEST_CASE("two by two closed form") {
  for (double eps : {0.1, 0.01}) {
    Matrix b(2, 2);
    b(0, 1) = b(1, 0) = eps;
    auto rep = wielandt_check(Matrix::diagonal({2, 0}), b, 1, 1e-12);
    REQUIRE(rep.indices.size() == 2);
    const double exact = std::sqrt(1 + eps * eps) - 1;
    CHECK(rep.indices[0].shift == doctest::Approx(exact).epsilon(1e-9));
    CHECK(rep.indices[1].shift == doctest::Approx(exact).epsilon(1e-9));
    CHECK(rep.indices[0].bound == doctest::Approx(eps * eps / 2));
    CHECK(rep.passed());
  }
}

TEST_CASE("non-admissible perturbations are rejected") {
  Matrix b(2, 2);
  b(0, 0) = 0.1;
  CHECK_THROWS_AS(wielandt_check(Matrix::diagonal({2, 0}), b, 1, 1e-12), ValidationError);
}

TEST_CASE("bounds and shifts scale quadratically") {
  TrialEngine e(11);
  auto a = random_symmetric(10, e);
  std::vector<double> bounds;
  std::vector<double> shifts;
  for (double s : {1e-1, 1e-2, 1e-3}) {
    auto rep = wielandt_check(a, make_admissible_perturbation(a, 4, 5, s, 1e-10), 4, 1e-10);
    CHECK(rep.passed());
    bounds.push_back(rep.indices[0].bound);
    shifts.push_back(rep.indices[0].shift);
  }
  for (int k = 0; k < 2; ++k) {
    CHECK(bounds[k] / bounds[k + 1] == doctest::Approx(100).epsilon(0.2));
    CHECK(shifts[k] / shifts[k + 1] == doctest::Approx(100).epsilon(0.2));
  }
}

TEST_CASE("seeded trials") {
  auto t = wielandt_trials(10, 4, 200, 1, 0.1, 1e-10);
  REQUIRE(t.size() == 200);
  for (const auto& r : t) CHECK_FALSE(r.violation);
  auto again = wielandt_trials(10, 4, 3, 1, 0.1, 1e-10);
  CHECK(again[2].worst_margin_top == t[2].worst_margin_top);
  CHECK(trials_to_csv(again).rfind("seed,scale,worst_margin_top,worst_margin_bottom,violation\n", 0) == 0);
}
