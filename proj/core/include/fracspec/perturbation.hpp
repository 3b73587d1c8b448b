#pragma once

#include "fracspec/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fracspec {

/// 64-bit linear congruential generator (Knuth MMIX constants, modulus 2^64).
using TrialEngine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0>;

/// Uniform double in [0, 1) from the top 53 bits of the next state.
double uniform01(TrialEngine& engine);

struct ProjectorPair {
  Matrix top;     // onto the eigenvectors of the d largest eigenvalues
  Matrix bottom;  // onto the complement
  std::size_t d = 0;
  double gap = 0.0;                // lambda_d - lambda_{d+1}, decreasing order
  std::vector<double> values_desc;
};

/// Throws ValidationError unless 1 <= d < n and the gap exceeds 10 tol.
ProjectorPair spectral_projectors(const Matrix& a, std::size_t d, double tol);

/// B = P_top C P_bottom + its transpose with C seeded uniform in [-1, 1],
/// rescaled to spectral norm `scale`.
Matrix make_admissible_perturbation(const Matrix& a, std::size_t d, std::uint64_t seed, double scale, double tol);

/// max(||P_top B P_top||, ||P_bottom B P_bottom||) in the spectral norm.
double admissibility_residual(const ProjectorPair& p, const Matrix& b);

struct WielandtIndex {
  std::size_t j = 0;  // 1-based, decreasing order
  double before = 0.0;
  double after = 0.0;
  double shift = 0.0;  // toward the expected side: after - before for j <= d, before - after otherwise
  double bound = 0.0;  // ||B||^2 / |lambda_j - lambda on the other side of the split|
  double margin = 0.0;  // min(shift, bound - shift)
  bool holds = false;
};

struct WielandtReport {
  std::size_t d = 0;
  double norm_b = 0.0;
  double gap = 0.0;
  double slack = 0.0;  // 1e3 eps ||A||
  std::vector<WielandtIndex> indices;
  double worst_margin_top = 0.0;
  double worst_margin_bottom = 0.0;
  std::size_t violations = 0;
  bool passed() const { return violations == 0; }
};

/// Compares the spectra of A and A + B against the two-sided shift bounds.
/// Throws ValidationError when B is not admissible within tol or the gap hypothesis fails.
WielandtReport wielandt_check(const Matrix& a, const Matrix& b, std::size_t d, double tol);

/// Symmetric matrix with entries uniform in [-1, 1].
Matrix random_symmetric(std::size_t n, TrialEngine& engine);

struct TrialResult {
  std::uint64_t seed = 0;
  double scale = 0.0;
  double worst_margin_top = 0.0;
  double worst_margin_bottom = 0.0;
  bool violation = false;
};

/// Seeds first_seed .. first_seed + trials - 1. Each trial draws A until the
/// gap hypothesis holds, then B with norm scale_fraction * gap.
std::vector<TrialResult> wielandt_trials(std::size_t n, std::size_t d, std::size_t trials, std::uint64_t first_seed,
                                         double scale_fraction, double tol);

/// Columns seed, scale, worst_margin_top, worst_margin_bottom, violation.
std::string trials_to_csv(const std::vector<TrialResult>& trials);

}  // namespace fracspec
