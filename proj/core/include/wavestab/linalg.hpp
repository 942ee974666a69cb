#pragma once

#include <span>
#include <vector>

namespace wavestab {

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols, double value = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, value) {}

  static DenseMatrix identity(int n);

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double max_abs() const;
  double frobenius_norm() const;
  /// max_{i,j} |a_ij - a_ji|.
  double symmetry_defect() const;
  void symmetrize();

  std::vector<double> apply(std::span<const double> x) const;

 private:
  int rows_, cols_;
  std::vector<double> a_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws std::runtime_error if a pivot collapses.
std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b);

struct EigenSolution {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix vectors;              // column i pairs with eigenvalues[i]
  int sweeps = 0;
};

/// Full spectral decomposition of a symmetric matrix by cyclic Jacobi
/// rotations.  Stops once the off-diagonal Frobenius norm drops below
/// tol * ||A||_F; throws std::runtime_error after max_sweeps sweeps.
EigenSolution jacobi_eigensolve(DenseMatrix a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace wavestab
