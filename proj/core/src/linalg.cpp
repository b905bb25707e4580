#include "k3cover/linalg.hpp"

#include <algorithm>

namespace k3cover {

std::vector<CD> lu_solve(MatC a, std::vector<CD> b, double pivot_tol) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("lu_solve: shape mismatch");
  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, cabs(a(i, j)));
  if (scale == 0) throw SingularMatrixError("zero matrix");
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (cabs(a(i, k)) > cabs(a(piv, k))) piv = i;
    if (cabs(a(piv, k)) < pivot_tol * scale) throw SingularMatrixError("singular system");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(piv)]);
    }
    for (int i = k + 1; i < n; ++i) {
      CD f = a(i, k) / a(k, k);
      if (f == CD(0.0)) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(k)];
    }
  }
  std::vector<CD> x(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    CD s = b[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] = s / a(i, i);
  }
  return x;
}

CD determinant(MatC a) {
  const int n = a.rows();
  CD det(1.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (cabs(a(i, k)) > cabs(a(piv, k))) piv = i;
    if (cabs(a(piv, k)) == 0.0) return CD(0.0);
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      CD f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

namespace {

// Row echelon with column pivoting; returns pivot columns and transforms a in
// place.  Shared by rank/nullspace.
std::vector<int> echelon(MatC& a, double rank_tol) {
  const int r = a.rows(), c = a.cols();
  double scale = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) scale = std::max(scale, cabs(a(i, j)));
  std::vector<int> pivots;
  if (scale == 0) return pivots;
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int piv = row;
    for (int i = row + 1; i < r; ++i)
      if (cabs(a(i, col)) > cabs(a(piv, col))) piv = i;
    if (cabs(a(piv, col)) < rank_tol * scale) continue;
    if (piv != row)
      for (int j = 0; j < c; ++j) std::swap(a(row, j), a(piv, j));
    CD inv = CD(1.0) / a(row, col);
    for (int j = 0; j < c; ++j) a(row, j) *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == row) continue;
      CD f = a(i, col);
      if (f == CD(0.0)) continue;
      for (int j = 0; j < c; ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank_of(const MatC& a, double rank_tol) {
  MatC w = a;
  return static_cast<int>(echelon(w, rank_tol).size());
}

std::vector<std::vector<CD>> nullspace(const MatC& a, double rank_tol) {
  MatC w = a;
  std::vector<int> pivots = echelon(w, rank_tol);
  const int c = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(c), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<std::vector<CD>> basis;
  for (int free = 0; free < c; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<CD> v(static_cast<size_t>(c), CD(0.0));
    v[static_cast<size_t>(free)] = CD(1.0);
    for (size_t prow = 0; prow < pivots.size(); ++prow)
      v[static_cast<size_t>(pivots[prow])] = -w(static_cast<int>(prow), free);
    double norm = 0;
    for (const CD& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (CD& z : v) z /= norm;
    basis.push_back(std::move(v));
  }
  return basis;
}

MatC inverse(const MatC& a) {
  const int n = a.rows();
  MatC aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = CD(1.0);
  }
  std::vector<int> pivots = echelon(aug, 1e-13);
  if (static_cast<int>(pivots.size()) != n) throw SingularMatrixError("matrix not invertible");
  MatC out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

namespace {

std::vector<int> echelon_exact(MatQ& a) {
  const int r = a.rows(), c = a.cols();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int piv = -1;
    for (int i = row; i < r; ++i)
      if (a(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < c; ++j) std::swap(a(row, j), a(piv, j));
    Rational inv = Rational(1) / a(row, col);
    for (int j = 0; j < c; ++j) a(row, j) *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (int j = 0; j < c; ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank_of(const MatQ& a) {
  MatQ w = a;
  return static_cast<int>(echelon_exact(w).size());
}

std::vector<std::vector<Rational>> nullspace(const MatQ& a) {
  MatQ w = a;
  std::vector<int> pivots = echelon_exact(w);
  const int c = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(c), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < c; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<size_t>(c), Rational(0));
    v[static_cast<size_t>(free)] = 1;
    for (size_t prow = 0; prow < pivots.size(); ++prow)
      v[static_cast<size_t>(pivots[prow])] = -w(static_cast<int>(prow), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> solve_particular(const MatQ& a, const std::vector<Rational>& b) {
  const int r = a.rows(), c = a.cols();
  MatQ aug(r, c + 1);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) aug(i, j) = a(i, j);
    aug(i, c) = b[static_cast<size_t>(i)];
  }
  std::vector<int> pivots = echelon_exact(aug);
  for (int p : pivots)
    if (p == c) throw std::invalid_argument("inconsistent linear system");
  std::vector<Rational> x(static_cast<size_t>(c), Rational(0));
  for (size_t prow = 0; prow < pivots.size(); ++prow)
    x[static_cast<size_t>(pivots[prow])] = aug(static_cast<int>(prow), c);
  return x;
}

}  // namespace k3cover
