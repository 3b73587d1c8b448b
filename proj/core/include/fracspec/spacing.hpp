#pragma once

#include "fracspec/conventions.hpp"
#include "fracspec/decimation.hpp"
#include "fracspec/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracspec {

struct MinSpacing {
  Real gap;
  std::size_t first = 0;  // indices of the achieving consecutive pair
  std::size_t second = 1;
};

/// Least consecutive difference of a sorted list; throws ValidationError for
/// fewer than two values.
MinSpacing min_spacing(const std::vector<Real>& sorted_values);

struct GapRatios {
  std::vector<Real> ratios;        // values[k+1] / values[k]
  std::vector<Real> tail_max;      // max of ratios[k..]: a limsup proxy
  Real max_ratio;
  std::size_t argmax = 0;
};

/// Throws ValidationError on nonpositive entries or fewer than two values.
GapRatios gap_ratios(const std::vector<Real>& sorted_values);

struct SpacingReport {
  std::string source;
  std::size_t count = 0;
  MinSpacing min;
  std::vector<Real> values;
  std::vector<Real> spacings;
  std::optional<GapRatios> ratios;  // only when every value is positive
};

SpacingReport spacing_report(const std::string& source, std::vector<Real> values);
std::string spacing_report_to_json(const SpacingReport& r, unsigned digits);
/// Columns index, value, spacing, ratio (blank where undefined).
std::string spacing_report_to_csv(const SpacingReport& r, unsigned digits);

enum class Verdict { positive_infimum, zero_infimum, inconclusive };
/// "PositiveInfimum", "ZeroInfimum", "Inconclusive".
std::string to_string(Verdict v);

struct Condition {
  std::string id;
  std::string statement;
  bool passed = false;
  std::string certificate;
};

struct CriterionVerdict {
  std::string criterion;  // "positive" or "zero"
  std::string system;
  Verdict verdict = Verdict::inconclusive;
  std::vector<Condition> conditions;
  std::string failed;  // id of the first failed condition
  Rational c;          // R'(0)

  // Positive criterion witnesses.
  std::vector<ExactReal> d0;
  Real c0;                              // min spacing of D0
  RationalInterval max_abs_derivative;  // max |R'| over R^-1[0, x_r]

  // Zero criterion witnesses.
  std::vector<FixedPoint> fixed_points;
  std::optional<FixedPoint> zeta;
};

/// Conditions (a)-(e) of the positive spacing criterion, each certified exactly or
/// by enclosures. D0 must contain 0 and have maximum x_r.
CriterionVerdict positive_criterion(const DecimationSystem& system, std::vector<ExactReal> d0, unsigned bits);

/// ZeroInfimum when some fixed point zeta in (0, x_r] has |R'(zeta)| > R'(0) > 1.
CriterionVerdict zero_criterion(const DecimationSystem& system, unsigned bits);

std::string verdict_to_json(const CriterionVerdict& v, unsigned digits);
std::string verdict_to_text(const CriterionVerdict& v, unsigned digits);

struct LemmaLevel {
  int n = 0;
  std::size_t size = 0;
  Real min_spacing;
  Real bound;  // C0 / R'(0)^n
  bool holds = false;
};

struct LemmaReport {
  std::string system;
  Real c0;
  Real slack;
  std::vector<LemmaLevel> levels;
  bool holds = true;
};

/// min spacing of D_k >= C0 / R'(0)^k for k = 0..n. Requires the positive
/// criterion to pass; throws ValidationError otherwise.
LemmaReport lemma_bound_check(const DecimationSystem& system, const std::vector<ExactReal>& d0, int n,
                              unsigned bits);

struct FloorLevel {
  int n = 0;
  std::size_t eigenvalues = 0;
  double max_distance = 0.0;  // from sigma(Delta_n) to D_n
  bool contained = false;
  double renormalized_min_spacing = 0.0;  // c^n * min spacing of sigma(Delta_n); 0 if < 2 values
  bool floor_holds = false;
};

struct FloorReport {
  std::string system;
  Boundary bc = Boundary::dirichlet;
  double c0 = 0.0;
  std::vector<FloorLevel> levels;
  bool passed = true;
};

/// Checks sigma(Delta_n) within D_n for n <= depth and the renormalized spacing floor C0.
FloorReport spacing_lower_bound_for_spectrum(const DecimationSystem& system, const FractalSpec& spec, Boundary bc,
                                             const std::vector<ExactReal>& d0, int depth, double tol,
                                             unsigned bits);

struct WitnessPoint {
  int m = 0;
  Real lambda1;
  Real lambda2;
  Real spacing;
};

/// The pair c^(n0+j+m) phi0^j(phi_zeta^m(x_i)), i = 1, 2, and its spacing.
WitnessPoint zero_spacing_witness(const DecimationSystem& system, const Real& x1, const Real& x2, int n0, int m,
                                  int j, unsigned bits);

struct WitnessReport {
  FixedPoint zeta;
  std::size_t zeta_branch = 0;
  std::vector<WitnessPoint> points;  // m = 0..m_max
  std::vector<Real> ratios;          // spacing(m+1) / spacing(m)
  Real expected_ratio;               // c / |R'(zeta)|
};

WitnessReport witness_sequence(const DecimationSystem& system, const Real& x1, const Real& x2, int n0, int m_max,
                               int j, unsigned bits);

struct D0Suggestion {
  std::vector<ExactReal> d0;
  bool accepted = true;
  std::vector<std::string> notes;
};

/// R^n applied to sigma(Delta_n) (exceptional values skipped), identified
/// exactly, plus 0 and x_r. With closure, R^-1{0, x_r} is added as well.
D0Suggestion suggest_D0(const DecimationSystem& system, const FractalSpec& spec, int n, double tol,
                        bool closure = true, Boundary bc = Boundary::neumann);

}  // namespace fracspec
