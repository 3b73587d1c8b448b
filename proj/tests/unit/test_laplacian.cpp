#include "fracspec/laplacian.hpp"
#include "fracspec/registry.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracspec;

namespace {

void check_spectrum(const SpectrumResult& s, const std::vector<double>& values, const std::vector<int>& mult) {
  REQUIRE(s.eigenvalues.size() == values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    CHECK(s.eigenvalues[k] == doctest::Approx(values[k]).epsilon(1e-10));
    CHECK(s.multiplicities[k] == mult[k]);
  }
}

}  // namespace

TEST_CASE("jacobi on small matrices") {
  Matrix a(2, 2);
  a(0, 0) = a(1, 1) = 2;
  a(0, 1) = a(1, 0) = 1;
  auto e = jacobi_eigen(a, 1e-14);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(3.0));
  CHECK(reconstruction_error(a, e) < 1e-13);
  CHECK(orthogonality_error(e) < 1e-13);
  CHECK(spectral_norm_symmetric(a) == doctest::Approx(3.0));
}

TEST_CASE("jacobi reproduces path eigenvalues") {
  const std::size_t n = 12;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = 2;
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1;
  }
  auto e = jacobi_eigen(a, 1e-14);
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(e.values[k] == doctest::Approx(2 - 2 * std::cos((k + 1) * M_PI / (n + 1))).epsilon(1e-12));
  }
  CHECK(reconstruction_error(a, e) < 1e-12);
}

TEST_CASE("jacobi rejects asymmetric input") {
  Matrix a(2, 2);
  a(0, 1) = 1;
  CHECK_THROWS_AS(jacobi_eigen(a, 1e-12), ValidationError);
}

TEST_CASE("matrix algebra") {
  auto i3 = Matrix::identity(3);
  auto d = Matrix::diagonal({1, 2, 3});
  CHECK((d * i3 - d).frobenius_norm() == 0.0);
  CHECK((2.0 * d)(2, 2) == 6.0);
  CHECK(d.transpose().asymmetry() == 0.0);
}

TEST_CASE("interval level spectra") {
  auto dir = level_spectrum(interval_spec(), 2, Convention::combinatorial, Boundary::dirichlet, 1e-12);
  check_spectrum(dir, {2 - std::sqrt(2.0), 2, 2 + std::sqrt(2.0)}, {1, 1, 1});
  auto neu = level_spectrum(interval_spec(), 2, Convention::combinatorial, Boundary::neumann, 1e-12);
  check_spectrum(neu, {0, 2 - std::sqrt(2.0), 2, 2 + std::sqrt(2.0), 4}, {1, 1, 1, 1, 1});
}

TEST_CASE("sierpinski gasket level spectra") {
  auto neu = level_spectrum(sg_spec(), 1, Convention::combinatorial, Boundary::neumann, 1e-12);
  check_spectrum(neu, {0, 3, 6}, {1, 2, 3});
  auto dir = level_spectrum(sg_spec(), 1, Convention::combinatorial, Boundary::dirichlet, 1e-12);
  check_spectrum(dir, {2, 5}, {1, 2});
  auto prob = level_spectrum(sg_spec(), 1, Convention::probabilistic, Boundary::neumann, 1e-12);
  check_spectrum(prob, {0, 0.75, 1.5}, {1, 2, 3});
  auto dir2 = level_spectrum(sg_spec(), 2, Convention::combinatorial, Boundary::dirichlet, 1e-12);
  const double r17 = std::sqrt(17.0);
  const double r5 = std::sqrt(5.0);
  check_spectrum(dir2, {(5 - r17) / 2, (5 - r5) / 2, (5 + r5) / 2, (5 + r17) / 2, 5, 6}, {1, 2, 2, 1, 3, 3});
  CHECK(dir2.dimension() == 12);
  CHECK(dir2.residual < 1e-10);
}

TEST_CASE("sg3 level spectra") {
  auto l0 = level_spectrum(sg3_spec(), 0, Convention::probabilistic, Boundary::neumann, 1e-12);
  check_spectrum(l0, {0, 1.5}, {1, 2});
  const double r2 = std::sqrt(2.0);
  auto neu = level_spectrum(sg3_spec(), 1, Convention::probabilistic, Boundary::neumann, 1e-12);
  check_spectrum(neu, {0, (3 - r2) / 4, 1, (3 + r2) / 4, 1.5}, {1, 2, 1, 2, 4});
  const double r5 = std::sqrt(5.0);
  auto dir = level_spectrum(sg3_spec(), 1, Convention::probabilistic, Boundary::dirichlet, 1e-12);
  check_spectrum(dir, {(3 - r5) / 4, 0.75, 1.25, (3 + r5) / 4, 1.5}, {1, 2, 2, 1, 1});
}

TEST_CASE("dirichlet needs an interior") {
  CHECK_THROWS_AS(level_spectrum(sg_spec(), 0, Convention::combinatorial, Boundary::dirichlet, 1e-12),
                  ValidationError);
}

TEST_CASE("decimation holds on every registered system") {
  const auto& reg = Registry::builtin();
  for (const auto& name : reg.names()) {
    const auto& s = reg.get(name);
    for (auto bc : {Boundary::neumann, Boundary::dirichlet}) {
      for (int m = 1; m <= 2; ++m) {
        auto r = verify_decimation(fractal_spec(s.fractal()), m, s, bc, 1e-9);
        CHECK_MESSAGE(r.passed, name << " " << to_string(bc) << " m=" << m);
        CHECK(r.max_distance < 1e-9);
      }
    }
  }
}

TEST_CASE("spectrum export") {
  auto s = level_spectrum(sg_spec(), 1, Convention::combinatorial, Boundary::neumann, 1e-12);
  auto csv = spectrum_to_csv(s);
  CHECK(csv.rfind("level,index,eigenvalue,multiplicity\n", 0) == 0);
  CHECK(spectrum_to_json(s).find("\"multiplicities\"") != std::string::npos);
}

TEST_CASE("small assembled matrices") {
  auto one = assemble(build_level(interval_spec(), 1), Convention::combinatorial, Boundary::dirichlet);
  REQUIRE(one.matrix.rows() == 1);
  CHECK(one.matrix(0, 0) == 2.0);
  auto k3 = assemble(build_level(sg3_spec(), 0), Convention::probabilistic, Boundary::neumann);
  CHECK(k3.matrix.rows() == 3);
  CHECK(k3.matrix.asymmetry() == 0.0);
  auto id = spectrum(Matrix::identity(4), 1e-12);
  CHECK(id.eigenvalues == std::vector<double>{1.0});
  CHECK(id.multiplicities == std::vector<int>{4});
}
