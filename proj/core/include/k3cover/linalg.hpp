#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "k3cover/rational.hpp"

namespace k3cover {

using CD = std::complex<double>;

/// Minimal dense matrix, row-major.  Sizes here never exceed a couple dozen,
/// so plain Gaussian elimination with partial pivoting is all we need.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, T fill = T{}) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat diag(const std::vector<T>& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Mat operator*(const Mat& o) const {
    Mat out(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        T v = (*this)(i, k);
        if (v == T{}) continue;
        for (int j = 0; j < o.c_; ++j) out(i, j) += v * o(k, j);
      }
    return out;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    std::vector<T> y(static_cast<size_t>(r_), T{});
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) y[static_cast<size_t>(i)] += (*this)(i, j) * x[static_cast<size_t>(j)];
    return y;
  }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using MatC = Mat<CD>;
using MatQ = Mat<Rational>;

inline double cabs(const CD& z) { return std::abs(z); }

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Solve A x = b by LU with partial pivoting.  Throws SingularMatrixError
/// when the pivot falls below pivot_tol * scale.
std::vector<CD> lu_solve(MatC a, std::vector<CD> b, double pivot_tol = 1e-13);

CD determinant(MatC a);

/// Orthonormal-ish basis of the right nullspace of a (rows x cols) matrix,
/// rank decided at rank_tol relative to the largest entry.
std::vector<std::vector<CD>> nullspace(const MatC& a, double rank_tol = 1e-9);

int rank_of(const MatC& a, double rank_tol = 1e-9);

MatC inverse(const MatC& a);

/// Exact rational elimination.
int rank_of(const MatQ& a);
std::vector<std::vector<Rational>> nullspace(const MatQ& a);
/// One particular solution of A x = b (A full row rank); throws when inconsistent.
std::vector<Rational> solve_particular(const MatQ& a, const std::vector<Rational>& b);

}  // namespace k3cover
