#include "fracspec/laplacian.hpp"
#include "fracspec/limit.hpp"
#include "fracspec/registry.hpp"

#include <boost/math/constants/constants.hpp>
#include <doctest.h>

using namespace fracspec;

namespace {

Real pi2() { return pow(boost::math::constants::pi<Real>(), 2); }

}  // namespace

TEST_CASE("interval limits converge to pi^2") {
  const auto& s = Registry::builtin().get("interval");
  PrecisionGuard g(288);
  auto lim = eigenvalue_limit(s, 1, Real(2), 1e-12, 256);
  CHECK(abs(lim.value - pi2()) < Real("1e-10"));
  CHECK(abs(lim.value - pi2()) <= lim.error_bound);
  CHECK(lim.c == 4);
  auto lim2 = eigenvalue_limit(s, 2, 2 + sqrt(Real(2)), 1e-12, 256);
  CHECK(abs(lim2.value - 9 * pi2()) < Real("1e-9"));
}

TEST_CASE("interval spectra by count") {
  const auto& s = Registry::builtin().get("interval");
  SpectrumOptions o;
  o.count = 8;
  o.bc = Boundary::dirichlet;
  auto dir = generate_spectrum(s, o);
  PrecisionGuard g(288);
  REQUIRE(dir.values.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(abs(dir.values[k].value / pi2() - (k + 1) * (k + 1)) < Real("1e-8"));
  o.bc = Boundary::neumann;
  auto neu = generate_spectrum(s, o);
  REQUIRE(neu.values.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(abs(neu.values[k].value / pi2() - k * k) < Real("1e-8"));
}

TEST_CASE("model spectra agree with the eigensolver") {
  const auto& reg = Registry::builtin();
  const std::vector<std::pair<std::string, int>> cases{{"interval", 5}, {"sg", 3}, {"sg3", 2}};
  for (const auto& [name, top] : cases) {
    const auto& s = reg.get(name);
    for (auto bc : {Boundary::neumann, Boundary::dirichlet}) {
      for (int n = 0; n <= top; ++n) {
        CHECK_MESSAGE(model_discrepancy(s, fractal_spec(s.fractal()), bc, n, 128) < 1e-9, name << " n=" << n);
      }
    }
  }
}

TEST_CASE("phi0 admissibility") {
  const auto& sg3 = Registry::builtin().get("sg3");
  PrecisionGuard g(160);
  CHECK_FALSE(phi0_admissible(sg3, Real(3) / 2, 128));
  CHECK(phi0_admissible(sg3, Real(1), 128));
}

TEST_CASE("cutoff runs are complete and nested") {
  const auto& sg = Registry::builtin().get("sg");
  SpectrumOptions o;
  o.cutoff = 400;
  o.bc = Boundary::dirichlet;
  auto a = generate_spectrum(sg, o);
  CHECK(a.complete);
  o.cutoff = 800;
  auto b = generate_spectrum(sg, o);
  REQUIRE(b.values.size() >= a.values.size());
  PrecisionGuard g(288);
  for (std::size_t k = 0; k < a.values.size(); ++k) CHECK(abs(a.values[k].value - b.values[k].value) < Real("1e-8"));
}

TEST_CASE("generation needs a bound") {
  const auto& sg = Registry::builtin().get("sg");
  SpectrumOptions o;
  CHECK_THROWS_AS(generate_spectrum(sg, o), ValidationError);
}

TEST_CASE("limit export") {
  const auto& s = Registry::builtin().get("interval");
  SpectrumOptions o;
  o.count = 2;
  auto g = generate_spectrum(s, o);
  CHECK(spectrum_limits_to_csv(g, 20).rfind("index,eigenvalue,base_level,base_value,error_bound\n", 0) == 0);
  CHECK(spectrum_limits_to_json(g, 20).find("\"eigenvalues\"") != std::string::npos);
}

TEST_CASE("limits from zero and from the second level") {
  const auto& reg = Registry::builtin();
  PrecisionGuard g(288);
  for (const auto& name : reg.names()) CHECK(eigenvalue_limit(reg.get(name), 3, Real(0), 1e-10, 256).value == 0);
  auto second = eigenvalue_limit(reg.get("interval"), 2, Real(2), 1e-12, 256);
  CHECK(abs(second.value - 4 * pi2()) < Real("1e-8"));
}

TEST_CASE("sg dirichlet truncation") {
  SpectrumOptions o;
  o.count = 10;
  o.bc = Boundary::dirichlet;
  auto s = generate_spectrum(Registry::builtin().get("sg"), o);
  REQUIRE(s.values.size() == 10);
  PrecisionGuard g(288);
  CHECK(s.values.front().value > 0);
  for (std::size_t k = 1; k < s.values.size(); ++k) CHECK(s.values[k].value - s.values[k - 1].value > Real("1e-3"));
}
