#include "fracspec/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracspec {

namespace {

constexpr double kSolverTol = 1e-15;

struct Descending {
  std::vector<double> values;
  Matrix vectors;  // column k belongs to values[k]
};

Descending eigen_desc(const Matrix& a) {
  auto e = jacobi_eigen(a, kSolverTol, 200);
  const std::size_t n = e.values.size();
  Descending out{std::vector<double>(e.values.rbegin(), e.values.rend()), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) out.vectors(i, k) = e.vectors(i, n - 1 - k);
  }
  return out;
}

Matrix projector(const Matrix& q, std::size_t from, std::size_t to) {
  const std::size_t n = q.rows();
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = from; k < to; ++k) s += q(i, k) * q(j, k);
      p(i, j) = s;
    }
  }
  return p;
}

void check_split(const Matrix& a, std::size_t d) {
  if (!a.square() || a.rows() < 2) throw ValidationError("matrix must be square with n >= 2");
  if (d < 1 || d >= a.rows()) {
    throw ValidationError("split index d = " + std::to_string(d) + " must lie in [1, " + std::to_string(a.rows() - 1) +
                          "]");
  }
}

// Spectral norm of a possibly non-symmetric matrix via M^T M.
double spectral_norm(const Matrix& m) {
  Matrix g = m.transpose() * m;
  return std::sqrt(std::max(0.0, spectral_norm_symmetric(0.5 * (g + g.transpose()))));
}

}  // namespace

double uniform01(TrialEngine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

ProjectorPair spectral_projectors(const Matrix& a, std::size_t d, double tol) {
  check_split(a, d);
  auto e = eigen_desc(a);
  const double gap = e.values[d - 1] - e.values[d];
  if (!(gap > 10 * tol)) {
    throw ValidationError("gap hypothesis fails: lambda_d - lambda_{d+1} = " + std::to_string(gap) +
                          " is not above 10 tol");
  }
  const std::size_t n = a.rows();
  return {projector(e.vectors, 0, d), projector(e.vectors, d, n), d, gap, e.values};
}

double admissibility_residual(const ProjectorPair& p, const Matrix& b) {
  return std::max(spectral_norm(p.top * b * p.top), spectral_norm(p.bottom * b * p.bottom));
}

Matrix make_admissible_perturbation(const Matrix& a, std::size_t d, std::uint64_t seed, double scale, double tol) {
  if (scale < 0) throw ValidationError("perturbation scale must be nonnegative");
  auto p = spectral_projectors(a, d, tol);
  const std::size_t n = a.rows();
  if (scale == 0) return Matrix(n, n);
  TrialEngine engine(seed);
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c(i, j) = 2 * uniform01(engine) - 1;
  }
  Matrix half = p.top * c * p.bottom;
  Matrix b = half + half.transpose();
  const double norm = spectral_norm_symmetric(b);
  if (norm == 0) return b;
  return (scale / norm) * b;
}

WielandtReport wielandt_check(const Matrix& a, const Matrix& b, std::size_t d, double tol) {
  check_split(a, d);
  if (b.rows() != a.rows() || b.cols() != a.cols()) throw ValidationError("A and B must have the same shape");
  if (b.asymmetry() > tol) throw ValidationError("perturbation B is not symmetric");
  auto p = spectral_projectors(a, d, tol);
  const double residual = admissibility_residual(p, b);
  if (residual > tol) {
    throw ValidationError("perturbation is not admissible: block residual " + std::to_string(residual));
  }
  WielandtReport rep;
  rep.d = d;
  rep.gap = p.gap;
  rep.norm_b = spectral_norm_symmetric(b);
  rep.slack = 1e3 * std::numeric_limits<double>::epsilon() * spectral_norm_symmetric(a);
  rep.worst_margin_top = std::numeric_limits<double>::infinity();
  rep.worst_margin_bottom = std::numeric_limits<double>::infinity();
  const auto after = eigen_desc(a + b).values;
  const auto& before = p.values_desc;
  const double b2 = rep.norm_b * rep.norm_b;
  for (std::size_t k = 0; k < before.size(); ++k) {
    WielandtIndex w;
    w.j = k + 1;
    w.before = before[k];
    w.after = after[k];
    const bool top = k < d;
    w.shift = top ? after[k] - before[k] : before[k] - after[k];
    w.bound = b2 / (top ? before[k] - before[d] : before[d - 1] - before[k]);
    w.margin = std::min(w.shift, w.bound - w.shift);
    w.holds = w.margin >= -rep.slack;
    if (!w.holds) ++rep.violations;
    double& worst = top ? rep.worst_margin_top : rep.worst_margin_bottom;
    worst = std::min(worst, w.margin);
    rep.indices.push_back(w);
  }
  return rep;
}

Matrix random_symmetric(std::size_t n, TrialEngine& engine) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = 2 * uniform01(engine) - 1;
  }
  return a;
}

std::vector<TrialResult> wielandt_trials(std::size_t n, std::size_t d, std::size_t trials, std::uint64_t first_seed,
                                         double scale_fraction, double tol) {
  if (scale_fraction < 0) throw ValidationError("scale fraction must be nonnegative");
  std::vector<TrialResult> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = first_seed + t;
    TrialEngine engine(seed);
    Matrix a;
    ProjectorPair p;
    for (int attempt = 0;; ++attempt) {
      a = random_symmetric(n, engine);
      check_split(a, d);
      auto values = eigen_desc(a).values;
      if (values[d - 1] - values[d] > 10 * tol) break;
      if (attempt == 100) throw ConvergenceError("no matrix with a spectral gap for seed " + std::to_string(seed));
    }
    p = spectral_projectors(a, d, tol);
    const double scale = scale_fraction * p.gap;
    Matrix b = make_admissible_perturbation(a, d, engine(), scale, tol);
    auto rep = wielandt_check(a, b, d, tol);
    out.push_back({seed, scale, rep.worst_margin_top, rep.worst_margin_bottom, !rep.passed()});
  }
  return out;
}

std::string trials_to_csv(const std::vector<TrialResult>& trials) {
  std::ostringstream os;
  os.precision(17);
  os << "seed,scale,worst_margin_top,worst_margin_bottom,violation\n";
  for (const auto& t : trials) {
    os << t.seed << ',' << t.scale << ',' << t.worst_margin_top << ',' << t.worst_margin_bottom << ','
       << (t.violation ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace fracspec
