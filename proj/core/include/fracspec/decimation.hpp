#pragma once

#include "fracspec/conventions.hpp"
#include "fracspec/exact_real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracspec {

/// Inverse of R on a maximal interval of strict monotonicity inside [0, x_r].
struct BranchInverse {
  ExactReal source_lo;
  ExactReal source_hi;
  bool pole_lo = false;  // the endpoint is a pole of R (open end)
  bool pole_hi = false;
  bool increasing = true;
  /// Image of the source; +-inf at pole ends.
  Real target_lo;
  Real target_hi;

  bool target_contains(const Real& y, const Real& slack) const;
  std::string describe() const;
};

/// An eigenvalue value that appears at a level without being a preimage of the previous level.
struct OffspringRule {
  ExactReal value;
  Boundary bc = Boundary::neumann;
  int first_level = 1;
  int last_level = -1;  // -1: no upper limit

  bool active(Boundary b, int level) const {
    return b == bc && level >= first_level && (last_level < 0 || level <= last_level);
  }
};

struct DecimationConfig {
  std::string name;
  std::string fractal;  // graph template name
  Convention convention = Convention::combinatorial;
  RationalFunction r;
  Rational x_r;
  std::vector<ExactReal> exceptional;
  std::vector<ExactReal> level0_neumann;
  std::vector<ExactReal> level0_dirichlet;
  std::vector<OffspringRule> offspring;
  /// phi0 contraction data: R(x) >= (c - eps) x on [0, y0].
  Rational phi0_y0;
  Rational phi0_eps;
};

class DecimationSystem {
 public:
  /// Validates the configuration (R(0) = 0, c > 1, the phi0 contraction
  /// inequality) and decomposes [0, x_r] into monotone branches.
  explicit DecimationSystem(DecimationConfig config);

  const DecimationConfig& config() const { return config_; }
  const std::string& name() const { return config_.name; }
  const std::string& fractal() const { return config_.fractal; }
  Convention convention() const { return config_.convention; }
  const RationalFunction& r() const { return config_.r; }
  const RationalFunction& dr() const { return dr_; }
  /// c = R'(0).
  const Rational& c() const { return c_; }
  const Rational& x_r() const { return config_.x_r; }
  const std::vector<ExactReal>& exceptional() const { return config_.exceptional; }
  const std::vector<ExactReal>& level0(Boundary bc) const;
  std::vector<ExactReal> births(Boundary bc, int level) const;

  const std::vector<ExactReal>& critical_points() const { return critical_; }
  const std::vector<ExactReal>& poles() const { return poles_; }
  const std::vector<BranchInverse>& branches() const { return branches_; }
  const BranchInverse& phi0() const { return branches_.front(); }

  /// K in |log(g(x)/c)| <= K x on [0, y0], with g = R(x)/x.
  const Rational& tail_constant() const { return tail_constant_; }
  /// 1/(c - eps): phi0 contracts by at least this factor below y0.
  Rational contraction() const { return 1 / (c_ - config_.phi0_eps); }
  /// True when R(x) <= c x on phi0's source, so c^n x bounds every descendant limit from below.
  bool pruning_certified() const { return pruning_certified_; }

  /// Membership in the exceptional set at the given resolution.
  bool is_exceptional(const Real& x, const Real& resolution) const;

 private:
  DecimationConfig config_;
  RationalFunction dr_;
  Rational c_;
  std::vector<ExactReal> critical_;
  std::vector<ExactReal> poles_;
  std::vector<BranchInverse> branches_;
  Rational tail_constant_;
  bool pruning_certified_ = false;
};

/// Certified extrema of f on [a, b] from endpoints and critical points.
struct Extremum {
  RationalInterval min_value;
  RationalInterval max_value;
  ExactReal argmin;
  ExactReal argmax;
};

/// Throws DomainError if f has a pole in [a, b].
Extremum extrema(const RationalFunction& f, const ExactReal& a, const ExactReal& b, unsigned bits);
Extremum extremum_of_derivative(const DecimationSystem& system, const ExactReal& a, const ExactReal& b,
                                unsigned bits);

struct FixedPoint {
  ExactReal point;
  RationalInterval multiplier;  // |R'(point)|
};

/// Solutions of R(x) = x in [a, b].
std::vector<FixedPoint> fixed_points(const DecimationSystem& system, const Rational& a, const Rational& b,
                                     unsigned bits);
/// Roots of R' in [0, x_r].
std::vector<ExactReal> critical_points(const DecimationSystem& system);

/// Repeated inversion of one branch at a fixed precision.
class BranchInverter {
 public:
  BranchInverter(const DecimationSystem& system, const BranchInverse& branch, unsigned bits);
  /// x in the branch source with |R(x) - y| <= 2^-bits max(1, |y|). Throws
  /// DomainError when y is outside the branch target.
  Real operator()(const Real& y) const;
  unsigned bits() const { return bits_; }

 private:
  Real value(const Real& x) const;
  Real slope(const Real& x) const;
  const BranchInverse* branch_;
  unsigned bits_;
  std::vector<Real> num_;
  std::vector<Real> den_;
  Real lo_;
  Real hi_;
  Real pole_lo_;
  Real pole_hi_;
};

Real apply_inverse(const DecimationSystem& system, const BranchInverse& branch, const Real& y, unsigned bits);

/// Every x in [0, x_r] with R(x) = y, sorted.
std::vector<Real> preimages(const DecimationSystem& system, const Real& y, unsigned bits);

/// D_n = D_0 u R^-1(D_0) u ... u R^-n(D_0), sorted, deduplicated at 2^-(bits/2).
std::vector<Real> preimage_set(const DecimationSystem& system, const std::vector<ExactReal>& d0, int n,
                               unsigned bits);

/// D_0, D_1, ..., D_n.
std::vector<std::vector<Real>> preimage_levels(const DecimationSystem& system, const std::vector<ExactReal>& d0,
                                               int n, unsigned bits);

/// Sorts and merges values closer than the resolution.
void sort_dedup(std::vector<Real>& values, const Real& resolution);

/// Rational strictly between a < b.
Rational rational_between(const ExactReal& a, const ExactReal& b);

}  // namespace fracspec
