#include "hyperpara/linalg.hpp"

namespace hyperpara {

Inertia signature_of_symmetric(const AMatrix& m0) {
  if (!m0.is_symmetric()) throw Error(ErrorCode::NonSymmetric, "signature_of_symmetric: matrix is not symmetric");
  AMatrix m = m0;
  std::size_t n = m.rows();
  std::vector<bool> alive(n, true);
  Inertia out;
  std::size_t left = n;
  auto eliminate_single = [&](std::size_t i) {
    AlgebraicScalar inv = m(i, i).inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (!alive[r] || r == i || m(r, i).is_zero()) continue;
      AlgebraicScalar f = m(r, i) * inv;
      for (std::size_t c = 0; c < n; ++c)
        if (alive[c] && c != i && !m(i, c).is_zero()) m(r, c) -= f * m(i, c);
    }
    alive[i] = false;
    --left;
  };
  while (left > 0) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (alive[i] && !m(i, i).is_zero()) piv = i;
    if (piv != n) {
      (m(piv, piv).sign() > 0 ? out.positive : out.negative) += 1;
      eliminate_single(piv);
      continue;
    }
    // All remaining diagonal entries vanish: look for a hyperbolic 2×2 block.
    std::size_t bi = n;
    std::size_t bj = n;
    for (std::size_t i = 0; i < n && bi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (alive[i] && alive[j] && !m(i, j).is_zero()) {
          bi = i;
          bj = j;
          break;
        }
    if (bi == n) {
      out.zero += left;
      break;
    }
    // [[0,b],[b,0]] has inertia (1,1); its inverse is [[0,1/b],[1/b,0]].
    out.positive += 1;
    out.negative += 1;
    AlgebraicScalar binv = m(bi, bj).inverse();
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < n; ++r)
      if (alive[r] && r != bi && r != bj) rest.push_back(r);
    AMatrix upd = m;
    for (auto r : rest)
      for (auto c : rest) {
        // M_rc −= M_r,bi·M_bj,c/b + M_r,bj·M_bi,c/b
        AlgebraicScalar t = m(r, bi) * m(bj, c) + m(r, bj) * m(bi, c);
        if (!t.is_zero()) upd(r, c) -= t * binv;
      }
    m = std::move(upd);
    alive[bi] = alive[bj] = false;
    left -= 2;
  }
  return out;
}

void SparseSystem::reduce(Row& row, Rational& rhs) const {
  auto it = row.begin();
  while (it != row.end()) {
    std::size_t c = it->first;
    auto p = pivots_.find(c);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    Rational f = it->second;
    for (const auto& [col, v] : p->second.first) {
      Rational& x = row[col];
      x -= f * v;
      if (x.is_zero()) row.erase(col);
    }
    rhs -= f * p->second.second;
    it = row.upper_bound(c);
  }
}

bool SparseSystem::add_equation(Row row, Rational rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= n_) throw Error(ErrorCode::InvalidIndex, "sparse equation references unknown out of range");
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  reduce(row, rhs);
  if (row.empty()) {
    if (!rhs.is_zero()) consistent_ = false;
    return consistent_;
  }
  std::size_t pc = row.begin()->first;
  Rational inv = row.begin()->second.inverse();
  for (auto& [c, v] : row) v *= inv;
  rhs *= inv;
  pivots_.emplace(pc, std::make_pair(std::move(row), std::move(rhs)));
  return consistent_;
}

std::vector<Rational> SparseSystem::solution() const {
  if (!consistent_) throw Error(ErrorCode::NoSolution, "sparse system is inconsistent");
  std::vector<Rational> x(n_, Rational(0));
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const auto& [c, pr] = *it;
    Rational v = pr.second;
    for (const auto& [col, a] : pr.first)
      if (col != c) v -= a * x[col];
    x[c] = v;
  }
  return x;
}

}  // namespace hyperpara
