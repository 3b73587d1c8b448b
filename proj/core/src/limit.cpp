#include "fracspec/limit.hpp"

#include "fracspec/laplacian.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracspec {

namespace {

Real resolution_for(unsigned bits) { return ldexp(Real(1), -static_cast<int>(bits / 2)); }

void check_range(const DecimationSystem& system, const Real& x, const Real& slack) {
  if (x < -slack || x > to_real(system.x_r()) + slack) {
    throw ValidationError("base value " + format_real(x, 20) + " outside [0, x_r]");
  }
}

}  // namespace

bool phi0_admissible(const DecimationSystem& system, const Real& x0, unsigned bits) {
  PrecisionGuard guard(bits + 32);
  const Real res = resolution_for(bits);
  Real smallest = to_real(system.x_r()) + 1;
  for (const auto& e : system.exceptional()) {
    if (e.sign() > 0) smallest = min(smallest, e.approx(bits));
  }
  BranchInverter phi0(system, system.phi0(), bits);
  Real x = x0;
  // phi0 moves toward 0 once x is below every exceptional value; stop there.
  for (int k = 0; k < 4 * static_cast<int>(bits); ++k) {
    Real next = phi0(x);
    if (system.is_exceptional(next, res)) return false;
    if (next < smallest - res && next <= x) return true;
    x = next;
  }
  return true;
}

EigenvalueLimit eigenvalue_limit(const DecimationSystem& system, int n0, const Real& lambda0, double tol,
                                 unsigned bits) {
  if (n0 < 0) throw ValidationError("base level must be nonnegative");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  PrecisionGuard guard(bits + 32);
  EigenvalueLimit out;
  out.base_level = n0;
  out.base_value = lambda0;
  out.c = system.c();
  const Real res = resolution_for(bits);
  check_range(system, lambda0, res);
  const Real c = to_real(system.c());
  Real scale = pow(c, n0);
  if (lambda0 <= 0) {
    out.value = 0;
    out.error_bound = 0;
    return out;
  }

  BranchInverter phi0(system, system.phi0(), bits);
  const Real y0 = to_real(system.config().phi0_y0);
  const Real q = to_real(system.contraction());
  const Real k_tail = to_real(system.tail_constant());
  const Real rounding = ldexp(Real(1), -static_cast<int>(bits) + 16);

  Real x = lambda0;
  Real s = scale * x;
  const int cap = 4 * static_cast<int>(bits) + 64;
  for (int k = 1; k <= cap; ++k) {
    x = phi0(x);
    scale *= c;
    Real next = scale * x;
    Real diff = abs(next - s);
    s = next;
    if (x > y0) continue;
    // |log(L / s_k)| <= K x_{k+1} / (1 - q) and x_{k+1} <= q x_k below y0.
    Real tail = k_tail * q * x / (1 - q);
    Real tail_err = s * (exp(tail) - 1);
    Real threshold = tol * max(Real(1), s);
    if (diff <= threshold && tail_err <= threshold) {
      out.iterations = k;
      out.value = s;
      out.error_bound = max(tail_err, diff) + rounding * s;
      return out;
    }
  }
  throw ConvergenceError("eigenvalue limit did not converge within " + std::to_string(cap) +
                         " iterations (precision too low for the tolerance?)");
}

std::vector<Real> model_level_spectrum(const DecimationSystem& system, Boundary bc, int n, unsigned bits) {
  if (n < 0) throw ValidationError("level must be nonnegative");
  PrecisionGuard guard(bits + 32);
  const Real res = resolution_for(bits);
  std::vector<Real> level;
  for (const auto& v : system.level0(bc)) level.push_back(v.approx(bits + 32));
  sort_dedup(level, res);
  for (int k = 1; k <= n; ++k) {
    std::vector<Real> next;
    for (const auto& y : level) {
      for (auto& x : preimages(system, y, bits)) {
        if (!system.is_exceptional(x, res)) next.push_back(std::move(x));
      }
    }
    for (const auto& b : system.births(bc, k)) next.push_back(b.approx(bits + 32));
    sort_dedup(next, res);
    level = std::move(next);
  }
  return level;
}

double model_discrepancy(const DecimationSystem& system, const FractalSpec& spec, Boundary bc, int n,
                         unsigned bits, double solver_tol) {
  std::vector<double> model;
  {
    PrecisionGuard guard(bits + 32);
    for (const auto& v : model_level_spectrum(system, bc, n, bits)) model.push_back(v.convert_to<double>());
  }
  std::vector<double> eig;
  if (!(bc == Boundary::dirichlet && n == 0)) {
    eig = level_spectrum(spec, n, system.convention(), bc, solver_tol).eigenvalues;
  }
  if (model.empty() && eig.empty()) return 0.0;
  if (model.empty() || eig.empty()) return std::numeric_limits<double>::infinity();
  auto one_way = [](const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0.0;
    for (double x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(model, eig), one_way(eig, model));
}

namespace {

struct Node {
  Real z;
  bool fresh = true;
};

GeneratedSpectrum run_generation(const DecimationSystem& system, const SpectrumOptions& o, double cutoff) {
  const bool bounded = cutoff > 0;
  if (bounded && !system.pruning_certified() && o.max_depth < 0) {
    throw ValidationError("system '" + system.name() +
                          "' lacks the pruning certificate; a cutoff needs --max-depth as well");
  }
  PrecisionGuard guard(o.bits + 32);
  const Real res = resolution_for(o.bits);
  const Real lambda_max = bounded ? Real(cutoff) : std::numeric_limits<Real>::infinity();
  const Real c = to_real(system.c());
  const bool prune = bounded && system.pruning_certified();

  Real fresh_floor = system.phi0().source_hi.approx(o.bits);
  for (const auto& rule : system.config().offspring) {
    if (rule.bc == o.bc && rule.value.sign() > 0) fresh_floor = min(fresh_floor, rule.value.approx(o.bits));
  }

  std::vector<BranchInverter> inverters;
  for (const auto& b : system.branches()) inverters.emplace_back(system, b, o.bits);

  GeneratedSpectrum out;
  out.system = system.name();
  out.bc = o.bc;
  out.cutoff = cutoff;

  std::vector<Node> level;
  for (const auto& v : system.level0(o.bc)) level.push_back({v.approx(o.bits + 32), true});
  Real cpow = 1;
  std::vector<LimitEigenvalue> found;
  for (int n = 0;; ++n) {
    for (const auto& node : level) {
      if (!node.fresh) continue;
      if (node.z <= res) {
        found.push_back({Real(0), n, Real(0), Real(0)});
        continue;
      }
      if (prune && cpow * node.z > lambda_max) continue;
      if (!phi0_admissible(system, node.z, o.bits)) continue;
      auto lim = eigenvalue_limit(system, n, node.z, o.tol, o.bits);
      if (lim.value <= lambda_max) found.push_back({lim.value, n, node.z, lim.error_bound});
    }
    out.depth = n;
    const bool certified = prune && n >= o.min_depth && cpow * c * fresh_floor > lambda_max;
    if (o.max_depth >= 0 && n >= o.max_depth) {
      out.complete = prune && cpow * c * fresh_floor > lambda_max;
      break;
    }
    if (certified) {
      out.complete = true;
      break;
    }
    if (n >= o.depth_cap) throw ConvergenceError("cutoff not certified within the depth cap " + std::to_string(o.depth_cap));

    std::vector<Node> next;
    const Real next_pow = cpow * c;
    for (const auto& node : level) {
      const Real slack = ldexp(max(Real(1), abs(node.z)), -static_cast<int>(o.bits / 2));
      for (std::size_t k = 0; k < inverters.size(); ++k) {
        if (!system.branches()[k].target_contains(node.z, slack)) continue;
        Real x = inverters[k](node.z);
        if (system.is_exceptional(x, res)) continue;
        if (prune && next_pow * x > lambda_max) continue;
        next.push_back({x, k != 0});
      }
    }
    for (const auto& b : system.births(o.bc, n + 1)) {
      Real x = b.approx(o.bits + 32);
      if (!(prune && next_pow * x > lambda_max)) next.push_back({x, true});
    }
    std::sort(next.begin(), next.end(), [](const Node& a, const Node& b) { return a.z < b.z; });
    std::vector<Node> merged;
    for (auto& node : next) {
      if (!merged.empty() && node.z - merged.back().z <= res) {
        merged.back().fresh = merged.back().fresh && node.fresh;
      } else {
        merged.push_back(std::move(node));
      }
    }
    level = std::move(merged);
    cpow = next_pow;
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  for (auto& v : found) {
    if (!out.values.empty() && v.value - out.values.back().value <= 10 * o.tol * max(Real(1), v.value)) continue;
    out.values.push_back(std::move(v));
  }
  return out;
}

}  // namespace

GeneratedSpectrum generate_spectrum(const DecimationSystem& system, const SpectrumOptions& options) {
  if (options.cutoff <= 0 && options.count <= 0 && options.max_depth < 0) {
    throw ValidationError("generate_spectrum needs a cutoff, a count or a maximum depth");
  }
  if (options.count <= 0) return run_generation(system, options, options.cutoff);
  if (options.cutoff > 0) {
    auto s = run_generation(system, options, options.cutoff);
    if (static_cast<int>(s.values.size()) > options.count) s.values.resize(static_cast<std::size_t>(options.count));
    return s;
  }
  const double c = system.c().get_d();
  double cutoff = c * c * system.x_r().get_d();
  for (;;) {
    auto s = run_generation(system, options, cutoff);
    if (static_cast<int>(s.values.size()) >= options.count) {
      s.values.resize(static_cast<std::size_t>(options.count));
      return s;
    }
    if (options.max_depth >= 0 && !s.complete) return s;  // depth exhausted before the count
    cutoff *= c;
  }
}

std::string spectrum_limits_to_csv(const GeneratedSpectrum& s, unsigned digits) {
  std::ostringstream os;
  os << "index,eigenvalue,base_level,base_value,error_bound\n";
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const auto& v = s.values[k];
    os << k << ',' << format_real(v.value, digits) << ',' << v.base_level << ',' << format_real(v.base_value, digits)
       << ',' << format_real(v.error_bound, 6) << '\n';
  }
  return os.str();
}

std::string spectrum_limits_to_json(const GeneratedSpectrum& s, unsigned digits) {
  nlohmann::json j;
  j["system"] = s.system;
  j["bc"] = to_string(s.bc);
  j["depth"] = s.depth;
  j["complete"] = s.complete;
  j["cutoff"] = s.cutoff;
  auto& arr = j["eigenvalues"] = nlohmann::json::array();
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const auto& v = s.values[k];
    arr.push_back({{"index", k},
                   {"eigenvalue", format_real(v.value, digits)},
                   {"base_level", v.base_level},
                   {"base_value", format_real(v.base_value, digits)},
                   {"error_bound", format_real(v.error_bound, 6)}});
  }
  return j.dump(2);
}

}  // namespace fracspec
