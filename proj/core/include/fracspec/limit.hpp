#pragma once

#include "fracspec/decimation.hpp"
#include "fracspec/graph.hpp"

#include <string>
#include <vector>

namespace fracspec {

/// lambda = lim c^(n0 + k) phi0^k(lambda0).
struct EigenvalueLimit {
  int base_level = 0;
  Real base_value;
  int iterations = 0;
  Real value;
  Real error_bound;
  Rational c;
};

/// Iterates phi0 until successive renormalized values agree to tol max(1, s)
/// and the geometric tail bound certifies the remaining change below the same
/// threshold. Throws ConvergenceError past the iteration cap.
EigenvalueLimit eigenvalue_limit(const DecimationSystem& system, int n0, const Real& lambda0, double tol,
                                 unsigned bits);

/// True when no phi0^k(x), k >= 1, falls in the exceptional set: only then
/// does x continue to the next levels through phi0.
bool phi0_admissible(const DecimationSystem& system, const Real& x, unsigned bits);

/// Level-n spectrum from the decimation model: preimages of level n-1 inside
/// [0, x_r] minus the exceptional set, plus the values born at level n.
std::vector<Real> model_level_spectrum(const DecimationSystem& system, Boundary bc, int n, unsigned bits);

/// Largest distance between the model spectrum and the eigensolver's distinct
/// eigenvalues in either direction (both lists are compared as sets).
double model_discrepancy(const DecimationSystem& system, const FractalSpec& spec, Boundary bc, int n,
                         unsigned bits, double solver_tol = 1e-12);

struct SpectrumOptions {
  Boundary bc = Boundary::dirichlet;
  /// Cutoff Lambda; <= 0 means none (then count or max_depth must be set).
  double cutoff = 0.0;
  /// Number of smallest eigenvalues; 0 means none.
  int count = 0;
  /// Only base levels <= max_depth; -1 means unlimited.
  int max_depth = -1;
  /// Keep generating until at least this depth even if the cutoff is certified earlier.
  int min_depth = 0;
  double tol = 1e-10;
  unsigned bits = kDefaultPrecisionBits;
  /// Hard cap on the base level.
  int depth_cap = 40;
};

struct LimitEigenvalue {
  Real value;
  int base_level = 0;
  Real base_value;
  Real error_bound;
};

struct GeneratedSpectrum {
  std::string system;
  Boundary bc = Boundary::dirichlet;
  std::vector<LimitEigenvalue> values;  // ascending, distinct
  int depth = 0;                        // deepest base level visited
  /// Every eigenvalue below `cutoff` is present.
  bool complete = false;
  double cutoff = 0.0;
};

GeneratedSpectrum generate_spectrum(const DecimationSystem& system, const SpectrumOptions& options);

std::string spectrum_limits_to_csv(const GeneratedSpectrum& s, unsigned digits);
std::string spectrum_limits_to_json(const GeneratedSpectrum& s, unsigned digits);

}  // namespace fracspec
