#include "hyperpara/liealg.hpp"

#include "hyperpara/linalg.hpp"

namespace hyperpara {

namespace {

void axpy(Vec& y, const AlgebraicScalar& a, const SparseVec& x) {
  for (const auto& [k, v] : x) y[k] += a * v;
}

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.emplace_back(k, v[k]);
  return out;
}

}  // namespace

Vec basis_vector(std::size_t dim, std::size_t i) {
  Vec v(dim);
  v.at(i) = AlgebraicScalar(1);
  return v;
}

LieAlgebra LieAlgebra::unchecked(std::vector<std::string> labels, const std::vector<Bracket>& brackets) {
  LieAlgebra L;
  L.labels_ = std::move(labels);
  std::size_t n = L.dim();
  L.c_.assign(n * n, {});
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n) throw Error(ErrorCode::InvalidIndex, "bracket index out of range");
    for (const auto& [k, v] : b.out)
      if (k >= n) throw Error(ErrorCode::InvalidIndex, "bracket output index out of range");
    if (b.i == b.j) {
      if (!b.out.empty()) throw Error(ErrorCode::Schema, "[e_i,e_i] must vanish");
      continue;
    }
    L.set(b.i, b.j, b.out);
  }
  return L;
}

LieAlgebra::LieAlgebra(std::vector<std::string> labels, const std::vector<Bracket>& brackets) {
  *this = unchecked(std::move(labels), brackets);
  if (auto bad = jacobi_violation()) {
    const auto& t = *bad;
    throw Error(ErrorCode::JacobiFailure, "Jacobi identity fails on (" + labels_[t[0]] + ", " + labels_[t[1]] + ", " +
                                              labels_[t[2]] + ")");
  }
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i + 1));
  return LieAlgebra(labels, {});
}

void LieAlgebra::set(std::size_t i, std::size_t j, const SparseVec& v) {
  SparseVec clean;
  for (const auto& [k, x] : v)
    if (!x.is_zero()) clean.emplace_back(k, x);
  SparseVec neg = clean;
  for (auto& [k, x] : neg) x = -x;
  c_[i * dim() + j] = clean;
  c_[j * dim() + i] = neg;
}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

AlgebraicScalar LieAlgebra::c(std::size_t k, std::size_t i, std::size_t j) const {
  for (const auto& [kk, v] : structure(i, j))
    if (kk == k) return v;
  return {};
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "bracket: vector length");
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j].is_zero() || structure(i, j).empty()) continue;
      axpy(out, x[i] * y[j], structure(i, j));
    }
  }
  return out;
}

std::optional<std::array<std::size_t, 3>> LieAlgebra::jacobi_violation() const {
  std::size_t n = dim();
  auto br_sparse = [&](const SparseVec& x, std::size_t k) {
    Vec out(n);
    for (const auto& [i, v] : x) axpy(out, v, structure(i, k));
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
        Vec s = br_sparse(structure(i, j), k);
        Vec t = br_sparse(structure(j, k), i);
        Vec u = br_sparse(structure(k, i), j);
        for (std::size_t m = 0; m < n; ++m)
          if (!(s[m] + t[m] + u[m]).is_zero()) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

std::vector<LieAlgebra::Bracket> LieAlgebra::brackets() const {
  std::vector<Bracket> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (!structure(i, j).empty()) out.push_back({i, j, structure(i, j)});
  return out;
}

bool LieAlgebra::is_abelian() const {
  for (const auto& s : c_)
    if (!s.empty()) return false;
  return true;
}

Matrix<ComplexScalar> elementary(std::size_t n, std::size_t j, std::size_t k) {
  Matrix<ComplexScalar> m(n, n);
  m(j - 1, k - 1) = ComplexScalar(1);
  return m;
}

LieAlgebra from_matrix_basis(const MatrixBasis& b) {
  std::size_t n = b.mats.size();
  if (n == 0) return LieAlgebra({}, {});
  if (b.labels.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix basis: label count");
  std::size_t N = b.mats[0].rows();
  for (const auto& m : b.mats)
    if (m.rows() != N || m.cols() != N) throw Error(ErrorCode::DimensionMismatch, "matrix basis: sizes differ");

  auto flatten = [&](const Matrix<ComplexScalar>& m, AMatrix& target, std::size_t col) {
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        target(2 * (r * N + c), col) = m(r, c).re;
        target(2 * (r * N + c) + 1, col) = m(r, c).im;
      }
  };

  // Columns: basis matrices, then every commutator [M_i, M_j] with i < j.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  AMatrix aug(2 * N * N, n + pairs.size());
  for (std::size_t i = 0; i < n; ++i) flatten(b.mats[i], aug, i);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& A = b.mats[pairs[p].first];
    const auto& B = b.mats[pairs[p].second];
    flatten(A * B - B * A, aug, n + p);
  }
  auto piv = rref(aug);
  for (std::size_t r = 0; r < n; ++r)
    if (r >= piv.size() || piv[r] != r)
      throw Error(ErrorCode::DependentBasis, "matrix basis is linearly dependent over the reals");
  if (piv.size() > n) {
    const auto& [i, j] = pairs[piv[n] - n];
    throw Error(ErrorCode::NotClosedUnderBracket, "[" + b.labels[i] + ", " + b.labels[j] + "] leaves the span of the basis");
  }

  std::vector<LieAlgebra::Bracket> brs;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    Vec coeffs(n);
    for (std::size_t r = 0; r < n; ++r) coeffs[r] = aug(r, n + p);
    auto sv = to_sparse(coeffs);
    if (!sv.empty()) brs.push_back({pairs[p].first, pairs[p].second, sv});
  }
  return LieAlgebra(b.labels, brs);
}

AMatrix trace_form(const MatrixBasis& b) {
  std::size_t n = b.mats.size();
  AMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto P = b.mats[i] * b.mats[j];
      ComplexScalar tr;
      for (std::size_t k = 0; k < P.rows(); ++k) tr += P(k, k);
      if (!tr.im.is_zero())
        throw Error(ErrorCode::NonRealTrace, "tr(" + b.labels[i] + "·" + b.labels[j] + ") is not real");
      g(i, j) = g(j, i) = tr.re * AlgebraicScalar(Rational(1, 2));
    }
  return g;
}

bool check_biinvariant(const LieAlgebra& L, const AMatrix& g) {
  std::size_t n = L.dim();
  if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::DimensionMismatch, "metric size");
  auto gvec = [&](const SparseVec& v, std::size_t z) {
    AlgebraicScalar s;
    for (const auto& [k, x] : v) s += x * g(k, z);
    return s;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (!(gvec(L.structure(x, y), z) + gvec(L.structure(x, z), y)).is_zero()) return false;
  return true;
}

}  // namespace hyperpara
