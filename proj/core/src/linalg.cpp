#include "wavestab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wavestab {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::symmetry_defect() const {
  double m = 0.0;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    }
  }
  return m;
}

void DenseMatrix::symmetrize() {
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = v;
      (*this)(j, i) = v;
    }
  }
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) {
    throw std::runtime_error("lu_solve: dimension mismatch");
  }
  const double scale = std::max(a.max_abs(), 1e-300);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double big = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > big) {
        big = std::abs(a(i, k));
        piv = i;
      }
    }
    if (big < 1e-14 * scale) throw std::runtime_error("lu_solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

namespace {

double offdiag_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigenSolution jacobi_eigensolve(DenseMatrix a, double tol, int max_sweeps) {
  const int n = a.rows();
  if (a.cols() != n) throw std::runtime_error("jacobi_eigensolve: matrix not square");
  DenseMatrix v = DenseMatrix::identity(n);
  const double norm = std::max(a.frobenius_norm(), 1e-300);

  int sweeps = 0;
  while (offdiag_norm(a) > tol * norm) {
    if (++sweeps > max_sweeps) {
      throw std::runtime_error("jacobi_eigensolve: no convergence");
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;
        a(p, p) -= h;
        a(q, q) += h;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j != p && j != q) {
            const double ajp = a(j, p);
            const double ajq = a(j, q);
            a(j, p) = ajp - s * (ajq + tau * ajp);
            a(j, q) = ajq + s * (ajp - tau * ajq);
            a(p, j) = a(j, p);
            a(q, j) = a(j, q);
          }
          const double vjp = v(j, p);
          const double vjq = v(j, q);
          v(j, p) = vjp - s * (vjq + tau * vjp);
          v(j, q) = vjq + s * (vjp - tau * vjq);
        }
      }
    }
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenSolution out;
  out.eigenvalues.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (int col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(idx[col], idx[col]);
    for (int row = 0; row < n; ++row) out.vectors(row, col) = v(row, idx[col]);
  }
  out.sweeps = sweeps;
  return out;
}

}  // namespace wavestab
