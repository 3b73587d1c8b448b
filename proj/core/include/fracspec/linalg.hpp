#pragma once

#include "fracspec/numeric.hpp"

#include <cstddef>
#include <vector>

namespace fracspec {

/// Dense row-major double matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const;
  double frobenius_norm() const;
  /// Largest |a_ij - a_ji| relative to the Frobenius norm (0 for the zero matrix).
  double asymmetry() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
  int sweeps = 0;
  double off_norm = 0.0;  // off-diagonal Frobenius norm at exit
};

/// Cyclic Jacobi rotations with accumulated eigenvectors. Stops once the
/// off-diagonal Frobenius norm is <= tol * ||A||_F. Throws ValidationError on a
/// non-symmetric input and ConvergenceError after max_sweeps.
EigenDecomposition jacobi_eigen(const Matrix& a, double tol, int max_sweeps = 100);

/// ||A - Q diag(values) Q^T||_F.
double reconstruction_error(const Matrix& a, const EigenDecomposition& e);
/// ||Q^T Q - I||_F.
double orthogonality_error(const EigenDecomposition& e);

/// Largest |eigenvalue| of a symmetric matrix.
double spectral_norm_symmetric(const Matrix& a, double tol = 1e-14);

}  // namespace fracspec
