#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperpara/liealg.hpp"
#include "hyperpara/matrix.hpp"
#include "hyperpara/polynomial.hpp"

namespace hyperpara {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxFormDim = 63;

inline Mask bit(std::size_t i) { return Mask{1} << i; }
/// Bits of m strictly above position i.
inline Mask above(Mask m, std::size_t i) { return i + 1 >= 64 ? 0 : (m >> (i + 1)) << (i + 1); }
inline Mask below(Mask m, std::size_t i) { return m & (bit(i) - 1); }
inline int parity(Mask m) { return std::popcount(m) & 1; }

/// Sign of e^A ∧ e^B relative to e^{A∪B} (A, B disjoint).
inline int wedge_sign(Mask a, Mask b) {
  int inv = 0;
  for (Mask r = b; r; r &= r - 1) inv += std::popcount(above(a, static_cast<std::size_t>(std::countr_zero(r))));
  return inv & 1 ? -1 : 1;
}

std::vector<std::size_t> mask_indices(Mask m);
Mask indices_mask(const std::vector<std::size_t>& idx);

/// Alternating k-form over a fixed frame of dimension ≤ 63, stored as a sparse
/// map from index bitmasks to coefficients.
///
/// Normalization is the determinant one: (e^{i₁}∧…∧e^{i_k})(e_{i₁},…,e_{i_k}) = 1.
template <class C>
class Form {
 public:
  using Terms = std::map<Mask, C>;

  Form() = default;
  Form(std::size_t dim, int degree) : dim_(dim), degree_(degree) {
    if (dim > kMaxFormDim) throw Error(ErrorCode::UnsupportedParameter, "form dimension above 63");
  }

  static Form scalar(std::size_t dim, const C& c) {
    Form f(dim, 0);
    f.add(0, c);
    return f;
  }
  static Form basis(std::size_t dim, std::size_t i, const C& c = C(1)) {
    Form f(dim, 1);
    f.add(bit(i), c);
    return f;
  }
  static Form monomial(std::size_t dim, const std::vector<std::size_t>& idx, C c = C(1)) {
    // idx need not be sorted; the sign of the sorting permutation is applied.
    Form f(dim, static_cast<int>(idx.size()));
    Mask m = 0;
    int sign = 1;
    for (auto i : idx) {
      if (m & bit(i)) return f;
      if (parity(above(m, i))) sign = -sign;
      m |= bit(i);
    }
    f.add(m, sign < 0 ? C(-c) : c);
    return f;
  }

  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }
  /// Value on frame vectors e_{idx...} in the given order.
  C component(const std::vector<std::size_t>& idx) const {
    Mask m = 0;
    int sign = 1;
    for (auto i : idx) {
      if (m & bit(i)) return C(0);
      if (parity(above(m, i))) sign = -sign;
      m |= bit(i);
    }
    C c = coeff(m);
    return sign < 0 ? C(-c) : c;
  }

  void add(Mask m, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Form operator-() const {
    Form f = *this;
    for (auto& [m, c] : f.terms_) c = -c;
    return f;
  }
  Form& operator+=(const Form& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  template <class S>
  Form scaled(const S& s) const {
    Form f(dim_, degree_);
    for (const auto& [m, c] : terms_) f.add(m, c * s);
    return f;
  }
  friend bool operator==(const Form& a, const Form& b) {
    if (a.is_zero() && b.is_zero()) return a.dim_ == b.dim_;
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Form& o) {
    if (o.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "form dimensions differ");
    if (o.degree_ != degree_ && !o.is_zero() && !is_zero())
      throw Error(ErrorCode::WrongDegree, "adding forms of different degree");
    // A zero form takes the degree of whatever is added to it.
    if (is_zero()) degree_ = o.degree_;
  }
  std::size_t dim_ = 0;
  int degree_ = 0;
  Terms terms_;
};

using KForm = Form<AlgebraicScalar>;
using PolyForm = Form<Polynomial>;

template <class C>
Form<C> wedge(const Form<C>& a, const Form<C>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "wedge: dimensions differ");
  Form<C> out(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      C v = ca * cb;
      out.add(ma | mb, wedge_sign(ma, mb) < 0 ? C(-v) : v);
    }
  return out;
}

/// Pullback (M*ω)(X₁,…,X_k) = ω(MX₁,…,MX_k) for an endomorphism M.
template <class C, class S>
Form<C> pullback(const Matrix<S>& M, const Form<C>& w) {
  std::size_t n = w.dim();
  if (M.rows() != n || M.cols() != n) throw Error(ErrorCode::DimensionMismatch, "pullback: matrix size");
  // e^i ∘ M = Σ_j M(i,j) e^j
  std::vector<std::vector<std::pair<std::size_t, S>>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!M(i, j).is_zero()) rows[i].emplace_back(j, M(i, j));
  Form<C> out(n, w.degree());
  for (const auto& [m, c] : w.terms()) {
    std::map<Mask, S> cur{{0, S(1)}};
    for (Mask r = m; r; r &= r - 1) {
      std::size_t i = static_cast<std::size_t>(std::countr_zero(r));
      std::map<Mask, S> next;
      for (const auto& [pm, pc] : cur)
        for (const auto& [j, v] : rows[i]) {
          if (pm & bit(j)) continue;
          S t = pc * v;
          if (parity(above(pm, j))) t = -t;
          auto [it, ins] = next.emplace(pm | bit(j), t);
          if (!ins) it->second += t;
        }
      cur.clear();
      for (auto& [k, v] : next)
        if (!v.is_zero()) cur.emplace(k, std::move(v));
    }
    for (const auto& [pm, pc] : cur) out.add(pm, c * pc);
  }
  return out;
}

/// J ω(X₁,…,X_r) = (−1)^r ω(JX₁,…,JX_r).
template <class C, class S>
Form<C> j_action(const Matrix<S>& J, const Form<C>& w) {
  Form<C> p = pullback(J, w);
  return w.degree() % 2 ? -p : p;
}

/// Value of ω on arbitrary vectors (determinant normalization).
template <class C>
C evaluate(const Form<C>& w, const std::vector<std::vector<C>>& vecs) {
  if (static_cast<int>(vecs.size()) != w.degree()) throw Error(ErrorCode::WrongDegree, "evaluate: wrong number of vectors");
  std::size_t k = vecs.size();
  C total(0);
  for (const auto& [m, c] : w.terms()) {
    auto idx = mask_indices(m);
    // Leibniz expansion; k ≤ 4 in every use.
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    C det(0);
    do {
      int inv = 0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
          if (perm[a] > perm[b]) ++inv;
      C t(1);
      for (std::size_t a = 0; a < k && !t.is_zero(); ++a) t = t * vecs[a][idx[perm[a]]];
      det += inv % 2 ? C(-t) : t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += c * det;
  }
  return total;
}

/// 2-form with ω(e_i,e_j) = M(i,j); M must be antisymmetric.
template <class C>
Form<C> two_form_from_matrix(const Matrix<C>& M) {
  Form<C> f(M.rows(), 2);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = i + 1; j < M.cols(); ++j) f.add(bit(i) | bit(j), M(i, j));
  return f;
}

template <class C>
Matrix<C> two_form_matrix(const Form<C>& w) {
  if (w.degree() != 2 && !w.is_zero()) throw Error(ErrorCode::WrongDegree, "expected a 2-form");
  Matrix<C> M(w.dim(), w.dim());
  for (const auto& [m, c] : w.terms()) {
    auto idx = mask_indices(m);
    M(idx[0], idx[1]) = c;
    M(idx[1], idx[0]) = -c;
  }
  return M;
}

/// Chevalley–Eilenberg differential: d e^k = −Σ_{i<j} c^k_{ij} e^i∧e^j, extended
/// as an antiderivation.
KForm ce_d(const LieAlgebra& L, const KForm& w);

/// X♭ = g(X,·).
KForm flat(const AMatrix& g, const Vec& x);
KForm flat_basis(const AMatrix& g, std::size_t i);

/// Terms ordered lexicographically by their increasing index tuples.
template <class C>
std::vector<std::pair<Mask, C>> lex_terms(const Form<C>& w) {
  std::vector<std::pair<Mask, C>> v(w.terms().begin(), w.terms().end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return mask_indices(a.first) < mask_indices(b.first); });
  return v;
}

/// Monomials spelled with frame labels, e.g. "2 X∧Y∧W − X∧U∧V".
std::string form_str(const KForm& w, const std::vector<std::string>& labels);

}  // namespace hyperpara
