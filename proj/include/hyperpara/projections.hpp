#pragma once

#include <array>
#include <vector>

#include "hyperpara/forms.hpp"

namespace hyperpara {

/// The three endomorphisms in a form usable with any coefficient type.
template <class S>
struct JTriple {
  std::array<Matrix<S>, 3> J;
  const Matrix<S>& operator[](int a) const { return J[static_cast<std::size_t>(a - 1)]; }
};

/// Derivation action (ρ(J)ω)(X₁,…,X_k) = Σ_t ω(X₁,…,JX_t,…,X_k).
template <class C, class S>
Form<C> derivation(const Matrix<S>& J, const Form<C>& w) {
  std::size_t n = w.dim();
  Form<C> out(n, w.degree());
  for (const auto& [m, c] : w.terms()) {
    for (Mask r = m; r; r &= r - 1) {
      std::size_t it = static_cast<std::size_t>(std::countr_zero(r));
      Mask rest = m & ~bit(it);
      Mask pre = below(rest, it);
      Mask suf = above(rest, it);
      for (std::size_t j = 0; j < n; ++j) {
        if (J(it, j).is_zero() || (rest & bit(j))) continue;
        int inv = std::popcount(above(pre, j)) + std::popcount(below(suf, j));
        C v = c * J(it, j);
        out.add(rest | bit(j), inv % 2 ? C(-v) : v);
      }
    }
  }
  return out;
}

/// † = −J₁⊗J₁ − J₂⊗J₂ + J₃⊗J₃ on Λ².
template <class C, class S>
Form<C> dagger(const JTriple<S>& T, const Form<C>& w) {
  if (w.degree() != 2 && !w.is_zero()) throw Error(ErrorCode::WrongDegree, "dagger acts on 2-forms");
  return pullback(T[3], w) - pullback(T[1], w) - pullback(T[2], w);
}

/// Casimir K = ρ(J₁)² + ρ(J₂)² − ρ(J₃)² of the paraquaternionic sl(2,ℝ) on Λ^k.
/// On the spin-s isotypic part it acts by 4s(s+1).
template <class C, class S>
Form<C> casimir(const JTriple<S>& T, const Form<C>& w) {
  return derivation(T[1], derivation(T[1], w)) + derivation(T[2], derivation(T[2], w)) -
         derivation(T[3], derivation(T[3], w));
}

/// Projection η_k onto A^k, the top-spin (s = k/2) component of Λ^k, along B^k.
/// k = 1 is the identity and k = 2 reproduces ¼(3ω + a₁ω + a₂ω − a₃ω).
template <class C, class S>
Form<C> project_A(const JTriple<S>& T, const Form<C>& w) {
  int k = w.degree();
  if (k > 3) throw Error(ErrorCode::UnsupportedDegree, "A^k projection implemented for k <= 3");
  if (w.is_zero() || k <= 1) return w;
  auto lambda = [](int t) { return Rational(t * (t + 2)); };
  Form<C> out = w;
  for (int t = k - 2; t >= 0; t -= 2) {
    Rational inv = (lambda(k) - lambda(t)).inverse();
    Form<C> kw = casimir(T, out);
    out = (kw - out.scaled(C(lambda(t)))).scaled(C(inv));
  }
  return out;
}

template <class C, class S>
Form<C> project_B(const JTriple<S>& T, const Form<C>& w) {
  return w - project_A(T, w);
}

/// Closed-form A²/B² projectors, ¼(3 + a₁ + a₂ − a₃) and its complement.
template <class C, class S>
Form<C> project_A2(const JTriple<S>& T, const Form<C>& w) {
  if (w.degree() != 2 && !w.is_zero()) throw Error(ErrorCode::WrongDegree, "project_A2 acts on 2-forms");
  Form<C> s = w.scaled(C(3)) + pullback(T[1], w) + pullback(T[2], w) - pullback(T[3], w);
  return s.scaled(C(Rational(1, 4)));
}
template <class C, class S>
Form<C> project_B2(const JTriple<S>& T, const Form<C>& w) {
  if (w.degree() != 2 && !w.is_zero()) throw Error(ErrorCode::WrongDegree, "project_B2 acts on 2-forms");
  Form<C> s = w - pullback(T[1], w) - pullback(T[2], w) + pullback(T[3], w);
  return s.scaled(C(Rational(1, 4)));
}

/// S_ab(ω)(X,Y,Z) = ω(J_aX,J_bY,Z) + ω(J_aX,Y,J_bZ) + ω(X,J_aY,J_bZ).
template <class C, class S>
Form<C> s_ab(const JTriple<S>& T, int a, int b, const Form<C>& w) {
  // Evaluate on all increasing frame triples through pullbacks of single slots.
  std::size_t n = w.dim();
  Form<C> out(n, 3);
  const auto& A = T[a];
  const auto& B = T[b];
  auto col = [&](const Matrix<S>& M, std::size_t i) {
    std::vector<std::pair<std::size_t, S>> v;
    for (std::size_t r = 0; r < n; ++r)
      if (!M(r, i).is_zero()) v.emplace_back(r, M(r, i));
    return v;
  };
  std::vector<std::vector<std::pair<std::size_t, S>>> Acol(n), Bcol(n);
  for (std::size_t i = 0; i < n; ++i) {
    Acol[i] = col(A, i);
    Bcol[i] = col(B, i);
  }
  auto term = [&](std::size_t x, std::size_t y, std::size_t z, int slotA, int slotB) {
    // Apply J_a in slotA, J_b in slotB, identity elsewhere.
    C acc(0);
    std::array<std::size_t, 3> base{x, y, z};
    for (const auto& [ra, va] : Acol[base[static_cast<std::size_t>(slotA)]])
      for (const auto& [rb, vb] : Bcol[base[static_cast<std::size_t>(slotB)]]) {
        std::array<std::size_t, 3> idx = base;
        idx[static_cast<std::size_t>(slotA)] = ra;
        idx[static_cast<std::size_t>(slotB)] = rb;
        C c = w.component({idx[0], idx[1], idx[2]});
        if (!c.is_zero()) acc += c * (va * vb);
      }
    return acc;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z) {
        C v = term(x, y, z, 0, 1) + term(x, y, z, 0, 2) + term(x, y, z, 1, 2);
        out.add(bit(x) | bit(y) | bit(z), v);
      }
  return out;
}

/// Coefficient forms of the (3,0)+(0,3) projector of I = Σ c_a J_a on the
/// complex sheet, expanded in 1, c₁², c₂², c₁c₂, c₁c₃, c₂c₃ after c₃² = 1 + c₁² + c₂².
/// ω ∈ B³ iff all six vanish.
template <class C, class S>
std::vector<Form<C>> b3_coefficient_forms(const JTriple<S>& T, const Form<C>& w) {
  if (w.degree() != 3 && !w.is_zero()) throw Error(ErrorCode::WrongDegree, "B³ test acts on 3-forms");
  Form<C> s[4][4];
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) s[a][b] = s_ab(T, a, b, w);
  C q(Rational(1, 4));
  C mq(Rational(-1, 4));
  std::vector<Form<C>> out;
  out.push_back((w - s[3][3]).scaled(q));
  out.push_back((s[1][1] + s[3][3]).scaled(mq));
  out.push_back((s[2][2] + s[3][3]).scaled(mq));
  out.push_back((s[1][2] + s[2][1]).scaled(mq));
  out.push_back((s[1][3] + s[3][1]).scaled(mq));
  out.push_back((s[2][3] + s[3][2]).scaled(mq));
  return out;
}

template <class C, class S>
bool in_B3_by_quadric(const JTriple<S>& T, const Form<C>& w) {
  for (const auto& f : b3_coefficient_forms(T, w))
    if (!f.is_zero()) return false;
  return true;
}

/// (3,0)+(0,3) part of ω for I = Σ c_a J_a: ¼[ω − Σ_ab c_a c_b S_ab ω] (complex I),
/// ¼[ω + Σ_ab c_a c_b S_ab ω] (para I).
template <class C, class S>
Form<C> extreme_part_at(const JTriple<S>& T, const Form<C>& w, const std::array<C, 3>& c, bool para) {
  Form<C> acc = w;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      C f = c[static_cast<std::size_t>(a - 1)] * c[static_cast<std::size_t>(b - 1)];
      if (f.is_zero()) continue;
      Form<C> t = s_ab(T, a, b, w).scaled(f);
      acc = para ? acc + t : acc - t;
    }
  return acc.scaled(C(Rational(1, 4)));
}

}  // namespace hyperpara
