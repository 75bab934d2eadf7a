#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bwcc {

// Dense row-major matrix for the small problems handled here (n <= 24).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  static Matrix identity(std::size_t n);
  Matrix transpose() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the unit eigenvector of values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
// tol * ||A||. The input must be symmetric.
SymmetricEigen jacobi_eigen(Matrix a, double tol = 1e-14, int max_sweeps = 100);

// Solves A x = b for symmetric positive definite A. Returns false when the
// factorization breaks down.
bool cholesky_solve(const Matrix& a, std::span<const double> b, std::vector<double>& x);

}  // namespace bwcc
