#pragma once

#include "fracspec/conventions.hpp"
#include "fracspec/decimation.hpp"
#include "fracspec/graph.hpp"
#include "fracspec/linalg.hpp"

#include <string>
#include <vector>

namespace fracspec {

/// Nonnegative Laplacian of a level graph as a symmetric matrix.
///
/// combinatorial: (Lu)(x) = sum over neighbours y of u(x) - u(y).
/// probabilistic: u(x) minus the neighbour average, symmetrized as
/// I - D^-1/2 A D^-1/2.
/// Dirichlet deletes the boundary rows and columns. Neumann keeps them; in the
/// combinatorial form boundary rows count each edge twice (the reflected
/// boundary), symmetrized by the same diagonal similarity.
struct LaplacianMatrix {
  Matrix matrix;
  std::vector<int> vertices;  // graph vertex of each row
};

LaplacianMatrix assemble(const LevelGraph& graph, Convention convention, Boundary bc);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // distinct, ascending
  std::vector<int> multiplicities;
  int level = -1;
  std::string fractal;
  Convention convention = Convention::combinatorial;
  Boundary bc = Boundary::neumann;
  double residual = 0.0;       // ||A - Q L Q^T||_F
  double orthogonality = 0.0;  // ||Q^T Q - I||_F
  double norm = 0.0;           // largest |eigenvalue|
  int sweeps = 0;

  std::size_t dimension() const;
  /// Eigenvalues repeated by multiplicity.
  std::vector<double> all_values() const;
};

/// Dense spectrum with multiplicities clustered at 10 tol ||A||.
SpectrumResult spectrum(const Matrix& a, double tol);
SpectrumResult level_spectrum(const FractalSpec& spec, int m, Convention convention, Boundary bc, double tol);

/// Distinct eigenvalues closer than the resolution merged; returns the representatives.
std::vector<double> cluster(const std::vector<double>& sorted_values, double resolution);

struct DecimationCheck {
  std::string fractal;
  int level = 0;
  Boundary bc = Boundary::neumann;
  int checked = 0;
  int exceptional = 0;
  double max_distance = 0.0;
  double worst_eigenvalue = 0.0;
  bool passed = true;
};

/// For every eigenvalue of level m outside the exceptional set, the distance
/// from R(lambda) to the level m-1 spectrum must be <= tol.
DecimationCheck verify_decimation(const FractalSpec& spec, int m, const DecimationSystem& system, Boundary bc,
                                  double tol, double solver_tol = 1e-12);

std::string spectrum_to_csv(const SpectrumResult& s);
std::string spectrum_to_json(const SpectrumResult& s);

}  // namespace fracspec
