#include "fracspec/laplacian.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracspec {

LaplacianMatrix assemble(const LevelGraph& graph, Convention convention, Boundary bc) {
  LaplacianMatrix out;
  for (int v = 0; v < static_cast<int>(graph.size()); ++v) {
    if (bc == Boundary::neumann || !graph.is_boundary(v)) out.vertices.push_back(v);
  }
  if (out.vertices.empty()) throw ValidationError("Dirichlet Laplacian has an empty interior at level 0");

  const std::size_t n = out.vertices.size();
  std::vector<int> row(graph.size(), -1);
  for (std::size_t i = 0; i < n; ++i) row[static_cast<std::size_t>(out.vertices[i])] = static_cast<int>(i);

  // Diagonal similarity weights: sqrt(reflection factor) or D^-1/2.
  std::vector<double> w(graph.size(), 1.0);
  for (int v = 0; v < static_cast<int>(graph.size()); ++v) {
    if (convention == Convention::probabilistic) {
      w[static_cast<std::size_t>(v)] = 1.0 / std::sqrt(static_cast<double>(graph.degree(v)));
    } else if (bc == Boundary::neumann && graph.is_boundary(v)) {
      w[static_cast<std::size_t>(v)] = std::sqrt(2.0);
    }
  }

  out.matrix = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = out.vertices[i];
    const double wv = w[static_cast<std::size_t>(v)];
    out.matrix(i, i) = static_cast<double>(graph.degree(v)) * wv * wv;
    for (int u : graph.neighbors(v)) {
      const int j = row[static_cast<std::size_t>(u)];
      if (j >= 0) out.matrix(i, static_cast<std::size_t>(j)) = -wv * w[static_cast<std::size_t>(u)];
    }
  }
  return out;
}

std::size_t SpectrumResult::dimension() const {
  std::size_t total = 0;
  for (int m : multiplicities) total += static_cast<std::size_t>(m);
  return total;
}

std::vector<double> SpectrumResult::all_values() const {
  std::vector<double> out;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) out.insert(out.end(), static_cast<std::size_t>(multiplicities[k]), eigenvalues[k]);
  return out;
}

std::vector<double> cluster(const std::vector<double>& sorted_values, double resolution) {
  std::vector<double> out;
  for (double x : sorted_values) {
    if (out.empty() || x - out.back() > resolution) out.push_back(x);
  }
  return out;
}

SpectrumResult spectrum(const Matrix& a, double tol) {
  auto e = jacobi_eigen(a, tol);
  SpectrumResult s;
  s.sweeps = e.sweeps;
  s.residual = reconstruction_error(a, e);
  s.orthogonality = orthogonality_error(e);
  s.norm = e.values.empty() ? 0.0 : std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  const double resolution = 10.0 * tol * std::max(s.norm, 1.0);
  // Clusters are chained from their first member; the mean is reported.
  std::size_t start = 0;
  for (std::size_t k = 1; k <= e.values.size(); ++k) {
    if (k == e.values.size() || e.values[k] - e.values[start] > resolution) {
      double sum = 0.0;
      for (std::size_t j = start; j < k; ++j) sum += e.values[j];
      s.eigenvalues.push_back(sum / static_cast<double>(k - start));
      s.multiplicities.push_back(static_cast<int>(k - start));
      start = k;
    }
  }
  return s;
}

SpectrumResult level_spectrum(const FractalSpec& spec, int m, Convention convention, Boundary bc, double tol) {
  LevelGraph g = build_level(spec, m);
  SpectrumResult s = spectrum(assemble(g, convention, bc).matrix, tol);
  s.level = m;
  s.fractal = spec.name;
  s.convention = convention;
  s.bc = bc;
  return s;
}

DecimationCheck verify_decimation(const FractalSpec& spec, int m, const DecimationSystem& system, Boundary bc,
                                  double tol, double solver_tol) {
  if (m < 1) throw ValidationError("decimation check needs level >= 1");
  DecimationCheck out;
  out.fractal = spec.name;
  out.level = m;
  out.bc = bc;
  const auto cur = level_spectrum(spec, m, system.convention(), bc, solver_tol);
  std::vector<double> prev;
  if (!(bc == Boundary::dirichlet && m == 1)) prev = level_spectrum(spec, m - 1, system.convention(), bc, solver_tol).eigenvalues;

  PrecisionGuard guard(64);
  const Real resolution(tol);
  for (double lambda : cur.eigenvalues) {
    if (system.is_exceptional(Real(lambda), resolution)) {
      ++out.exceptional;
      continue;
    }
    ++out.checked;
    double image = std::numeric_limits<double>::infinity();
    try {
      image = system.r()(Real(lambda)).convert_to<double>();
    } catch (const PoleError&) {
    }
    double best = std::numeric_limits<double>::infinity();
    for (double mu : prev) best = std::min(best, std::abs(image - mu));
    if (best >= out.max_distance) {
      out.max_distance = best;
      out.worst_eigenvalue = lambda;
    }
  }
  out.passed = out.max_distance <= tol;
  return out;
}

std::string spectrum_to_csv(const SpectrumResult& s) {
  std::ostringstream os;
  os.precision(17);
  os << "level,index,eigenvalue,multiplicity\n";
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    os << s.level << ',' << k << ',' << s.eigenvalues[k] << ',' << s.multiplicities[k] << '\n';
  }
  return os.str();
}

std::string spectrum_to_json(const SpectrumResult& s) {
  nlohmann::json j;
  j["fractal"] = s.fractal;
  j["level"] = s.level;
  j["convention"] = to_string(s.convention);
  j["bc"] = to_string(s.bc);
  j["dimension"] = s.dimension();
  j["residual"] = s.residual;
  j["sweeps"] = s.sweeps;
  j["eigenvalues"] = s.eigenvalues;
  j["multiplicities"] = s.multiplicities;
  return j.dump(2);
}

}  // namespace fracspec
