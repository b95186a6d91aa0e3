#include "hyperpara/forms.hpp"

#include <sstream>

namespace hyperpara {

std::vector<std::size_t> mask_indices(Mask m) {
  std::vector<std::size_t> out;
  for (; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

Mask indices_mask(const std::vector<std::size_t>& idx) {
  Mask m = 0;
  for (auto i : idx) m |= bit(i);
  return m;
}

KForm ce_d(const LieAlgebra& L, const KForm& w) {
  std::size_t n = w.dim();
  if (L.dim() != n) throw Error(ErrorCode::DimensionMismatch, "ce_d: algebra and form dimensions differ");
  // de^k as a list of (i, j, coefficient) with i < j.
  struct T2 {
    std::size_t i, j;
    AlgebraicScalar v;
  };
  std::vector<std::vector<T2>> de(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& [k, v] : L.structure(i, j)) de[k].push_back({i, j, -v});

  KForm out(n, w.degree() + 1);
  for (const auto& [m, c] : w.terms()) {
    int t = 0;
    for (Mask r = m; r; r &= r - 1, ++t) {
      std::size_t it = static_cast<std::size_t>(std::countr_zero(r));
      Mask rest = m & ~bit(it);
      Mask pre = below(rest, it);
      Mask suf = above(rest, it);
      for (const auto& [i, j, v] : de[it]) {
        if (rest & (bit(i) | bit(j))) continue;
        // Sort [pre, i, j, suf]; the position of e^{it} contributes (−1)^t.
        int inv = t + std::popcount(above(pre, i)) + std::popcount(above(pre, j)) + std::popcount(below(suf, i)) +
                  std::popcount(below(suf, j));
        AlgebraicScalar x = c * v;
        out.add(rest | bit(i) | bit(j), inv % 2 ? -x : x);
      }
    }
  }
  return out;
}

KForm flat(const AMatrix& g, const Vec& x) {
  std::size_t n = g.rows();
  KForm f(n, 1);
  for (std::size_t j = 0; j < n; ++j) {
    AlgebraicScalar s;
    for (std::size_t i = 0; i < n; ++i)
      if (!x[i].is_zero()) s += x[i] * g(i, j);
    f.add(bit(j), s);
  }
  return f;
}

KForm flat_basis(const AMatrix& g, std::size_t i) { return flat(g, basis_vector(g.rows(), i)); }

std::string form_str(const KForm& w, const std::vector<std::string>& labels) {
  if (w.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c0] : lex_terms(w)) {
    AlgebraicScalar c = c0;
    bool neg = c.sign() < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "−" : "");
    else
      os << (neg ? " − " : " + ");
    first = false;
    bool unit = c == AlgebraicScalar(1);
    if (!unit) os << (c.is_rational() ? c.str() : "(" + c.str() + ")") << (m ? " " : "");
    bool fst = true;
    for (auto i : mask_indices(m)) {
      os << (fst ? "" : "∧") << labels.at(i);
      fst = false;
    }
    if (m == 0 && unit) os << "1";
  }
  return os.str();
}

}  // namespace hyperpara
