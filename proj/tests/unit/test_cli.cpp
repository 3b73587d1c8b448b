#include "cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fracspec::app;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("graph command") {
  auto r = run({"graph", "--fractal", "sg", "--level", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"/2\"") != std::string::npos);
  auto csv = run({"--format", "csv", "graph", "--fractal", "sg", "--level", "1"});
  CHECK(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 10);
}

TEST_CASE("limit command") {
  auto r = run({"--tol", "1e-14", "limit", "--fractal", "interval", "--bc", "dirichlet", "--count", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("9.86960440108") != std::string::npos);
  CHECK(r.out.find("3.947841760435") != std::string::npos);
  CHECK(r.out.find("8.88264396098") != std::string::npos);
}

TEST_CASE("criterion command") {
  auto z = run({"--format", "text", "criterion", "--fractal", "sg3"});
  CHECK(z.code == 0);
  CHECK(z.out.find("ZeroInfimum") != std::string::npos);
  CHECK(z.out.find("90/7") != std::string::npos);
  auto p = run({"criterion", "--fractal", "sg", "--d0", "0,2,3,5,6"});
  CHECK(p.code == 0);
  CHECK(p.out.find("PositiveInfimum") != std::string::npos);
  auto strict = run({"--strict", "criterion", "--fractal", "sg3", "--kind", "positive"});
  CHECK(strict.code == kInconclusive);
  auto lax = run({"criterion", "--fractal", "sg3", "--kind", "positive"});
  CHECK(lax.code == 0);
}

TEST_CASE("validation errors exit 2 naming the flag") {
  auto cap = run({"graph", "--fractal", "sg", "--level", "9"});
  CHECK(cap.code == kValidation);
  CHECK(cap.err.find("cap") != std::string::npos);
  auto flag = run({"graph", "--fractal", "sg", "--bogus"});
  CHECK(flag.code == kValidation);
  CHECK(flag.err.find("--bogus") != std::string::npos);
  auto prec = run({"--precision", "32", "graph", "--fractal", "sg"});
  CHECK(prec.code == kValidation);
  CHECK(prec.err.find("--precision") != std::string::npos);
  auto reg = run({"--registry", "/nonexistent.json", "limit", "--fractal", "sg", "--count", "2"});
  CHECK(reg.code == kValidation);
  auto name = run({"criterion", "--fractal", "carpet"});
  CHECK(name.code == kValidation);
  auto format = run({"--format", "text", "graph", "--fractal", "sg"});
  CHECK(format.code == kValidation);
}

TEST_CASE("output file and determinism") {
  const auto dir = std::filesystem::temp_directory_path() / "fracspec_cli_test";
  std::filesystem::remove_all(dir);
  const auto path = (dir / "sub" / "trials.csv").string();
  auto a = run({"--format", "csv", "--seed", "9", "--output", path, "wielandt", "--trials", "20"});
  CHECK(a.code == 0);
  CHECK(a.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  auto b = run({"--format", "csv", "--seed", "9", "wielandt", "--trials", "20"});
  CHECK(content.str() == b.out);
  CHECK(b.out.rfind("seed,scale,", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("spectrum, spacing, witness and decimate-verify") {
  auto s = run({"--format", "csv", "spectrum", "--fractal", "sg", "--level", "1"});
  CHECK(s.code == 0);
  CHECK(s.out.find("level,index,eigenvalue,multiplicity") == 0);
  auto sp = run({"spacing", "--fractal", "interval", "--bc", "neumann", "--count", "5"});
  CHECK(sp.code == 0);
  CHECK(sp.out.find("min_spacing") != std::string::npos);
  auto w = run({"--precision", "128", "witness", "--fractal", "sg3", "--m", "3"});
  CHECK(w.code == 0);
  CHECK(w.out.find("expected_ratio") != std::string::npos);
  auto v = run({"decimate-verify", "--fractal", "sg", "--max-level", "2"});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("reproduce") {
  auto one = run({"--format", "text", "reproduce", "sg3-derivative"});
  CHECK(one.code == 0);
  CHECK(one.out.rfind("PASS", 0) == 0);
  auto bad = run({"reproduce", "nope"});
  CHECK(bad.code == kValidation);
  auto failing = run({"--format", "text", "reproduce", "2"});
  CHECK(failing.code == kFailure);
}
