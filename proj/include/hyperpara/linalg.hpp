#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "hyperpara/matrix.hpp"
#include "hyperpara/rational.hpp"

namespace hyperpara {

/// In-place reduced row echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Basis of {x : m x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  auto piv = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A particular solution of m x = b together with the kernel dimension, or
/// nullopt when inconsistent.
template <class T>
std::optional<std::pair<std::vector<T>, std::size_t>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs size mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols());
  return std::make_pair(std::move(x), m.cols() - piv.size());
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorCode::Degenerate, "matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia by exact symmetric elimination.
Inertia signature_of_symmetric(const AMatrix& m);

/// Sparse exact Gaussian elimination over ℚ for systems too large to keep dense.
class SparseSystem {
 public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseSystem(std::size_t unknowns) : n_(unknowns) {}
  std::size_t unknowns() const { return n_; }
  /// Adds Σ row[j] x_j = rhs. Rows are reduced against the current echelon
  /// basis on insertion; returns false if the system became inconsistent.
  bool add_equation(Row row, Rational rhs);
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }
  /// Particular solution with free variables set to zero.
  std::vector<Rational> solution() const;

 private:
  void reduce(Row& row, Rational& rhs) const;
  std::size_t n_;
  bool consistent_ = true;
  // pivot column → normalized row (pivot coefficient 1) and rhs
  std::map<std::size_t, std::pair<Row, Rational>> pivots_;
};

}  // namespace hyperpara
