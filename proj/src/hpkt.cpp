#include "hyperpara/hpkt.hpp"

#include "hyperpara/linalg.hpp"

namespace hyperpara {

JTriple<AlgebraicScalar> triple(const HyperParaStructure& S) { return {{S.J1, S.J2, S.J3}}; }

KForm d_a(const LieAlgebra& L, const HyperParaStructure& S, int a, const KForm& w) {
  const AMatrix& J = S.J(a);
  KForm t = j_action(J, ce_d(L, j_action(J, w)));
  if (a < 3) return -t;
  return w.degree() % 2 ? -t : t;
}

HolomorphicFlags holomorphic_characterization(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g) {
  require_compatible(S, g);
  auto F = kaehler_forms(S, g);
  std::array<KForm, 3> dF;
  for (int a = 0; a < 3; ++a) dF[a] = ce_d(L, F[a]);
  auto da = [&](int a, int b) { return d_a(L, S, a, F[b - 1]); };
  HolomorphicFlags h;
  h.b = (dF[1] - da(1, 3)).is_zero() && (da(1, 2) - dF[2]).is_zero();
  h.c = (dF[2] + da(2, 1)).is_zero() && (dF[0] + da(2, 3)).is_zero();
  h.d = (dF[0] + da(3, 2)).is_zero() && (da(3, 1) - dF[1]).is_zero();
  return h;
}

DaFbTable d_aF_b_table(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g) {
  require_compatible(S, g);
  auto F = kaehler_forms(S, g);
  DaFbTable t;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) t.entry[a - 1][b - 1] = d_a(L, S, a, F[b - 1]);
  t.diagonal_equal = t.entry[0][0] == t.entry[1][1] && t.entry[1][1] == t.entry[2][2];
  bool all_minus = true, all_plus = true;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      if (a == b) continue;
      int c = 6 - a - b;
      // ε_abc for the permutation (a,b,c) of (1,2,3)
      int eps = ((a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1)) ? 1 : -1;
      KForm dFc = ce_d(L, F[c - 1]).scaled(AlgebraicScalar(eps));
      const KForm& e = t.entry[a - 1][b - 1];
      int p = 0;
      if (e == -dFc) p = -1;
      if (e == dFc) p = (p == -1) ? 0 : 1;  // both only when dF_c = 0; count as consistent with either
      if (e == dFc && e == -dFc) {
        t.pattern[a - 1][b - 1] = 2;
        continue;
      }
      t.pattern[a - 1][b - 1] = p;
      all_minus = all_minus && p == -1;
      all_plus = all_plus && p == 1;
    }
  t.summary = all_minus ? "d_aF_b = -eps_abc dF_c" : (all_plus ? "d_aF_b = +eps_abc dF_c" : "mixed");
  return t;
}

AMatrix metric_from_form(const HyperParaStructure& S, const KForm& F, int which) {
  if (F.degree() != 2 && !F.is_zero()) throw Error(ErrorCode::WrongDegree, "metric_from_form expects a 2-form");
  const AMatrix& J = S.J(which);
  AMatrix g = two_form_matrix(F) * J;  // g(X,Y) = F(X, J Y)
  if (which == 3) g = -g;
  std::string clause = "clause for F" + std::to_string(which);
  if (!g.is_symmetric()) throw Error(ErrorCode::NotSymmetric, clause + ": induced bilinear form is not symmetric");
  auto in = signature_of_symmetric(g);
  if (in.zero > 0) throw Error(ErrorCode::Degenerate, clause + ": induced metric is degenerate");
  if (in.positive != in.negative) throw Error(ErrorCode::WrongSignature, clause + ": induced metric is not neutral");
  // A (0,2)-form vanishes on (1,0)-vectors: X + εJX for a para J, X − iJX for J₃.
  // which = 2: F₂ + εF₃ against J₁;  which = 1: F₃ − εF₁ against J₂;  which = 3: F₁ + iF₂ against J₃,
  // written as F₁ − iF₂ against X + iJ₃X by conjugation.
  AMatrix A, B, K;
  AlgebraicScalar sq(1);
  AMatrix Fg2 = g * S.J2, Fg3 = g * S.J3, Fg1 = g * S.J1;
  if (which == 2) {
    A = Fg2;
    B = Fg3;
    K = S.J1;
  } else if (which == 1) {
    A = Fg3;
    B = -Fg1;
    K = S.J2;
  } else {
    A = Fg1;
    B = -Fg2;
    K = S.J3;
    sq = AlgebraicScalar(-1);
  }
  // (A + uB)(X + uKX, Y) = [A(X,Y) + u²B(KX,Y)] + u[A(KX,Y) + B(X,Y)], u² = sq.
  AMatrix KtA = K.transpose() * A;
  AMatrix KtB = K.transpose() * B;
  AMatrix re = A + sq * KtB;
  AMatrix im = KtA + B;
  if (!re.is_zero() || !im.is_zero())
    throw Error(ErrorCode::WrongType, clause + ": companion form is not of the required pure type");
  return g;
}

KForm D(const LieAlgebra& L, const HyperParaStructure& S, const KForm& w) {
  return project_A(triple(S), ce_d(L, w));
}

std::string order_name(DSquareReport::Order o) {
  switch (o) {
    case DSquareReport::Order::Value: return "value";
    case DSquareReport::Order::FirstDerivative: return "first-derivative";
    default: return "symbol";
  }
}

DSquareReport check_d_squared(const LieAlgebra& L, const HyperParaStructure& S) {
  DSquareReport r;
  std::size_t n = L.dim();
  auto T = triple(S);
  auto fail = [&](std::size_t i, DSquareReport::Order o, std::vector<std::size_t> dir, KForm v) {
    r.nilpotent = false;
    r.witness = i;
    r.order = o;
    r.direction = std::move(dir);
    r.witness_value = std::move(v);
  };
  // With α = f e^i: D²α = f·D²e^i + Σ_l (e_l f)·P_l + Σ_{k,j} (e_k e_j f)·Q_kj where
  // Q_kj = η₃(e^k ∧ η₂(e^j ∧ e^i)) and P_l = η₃(d η₂(e^l ∧ e^i) + e^l ∧ D e^i). The
  // antisymmetric part of e_k e_j f is ½[e_k, e_j] f and feeds back into P_l.
  for (std::size_t i = 0; i < n; ++i) {
    KForm ei = KForm::basis(n, i);
    KForm Dei = D(L, S, ei);
    KForm v = D(L, S, Dei);
    if (!v.is_zero()) {
      fail(i, DSquareReport::Order::Value, {}, v);
      return r;
    }
    std::vector<KForm> Q(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      KForm a = project_A(T, wedge(KForm::basis(n, j), ei));
      for (std::size_t k = 0; k < n; ++k) Q[k * n + j] = project_A(T, wedge(KForm::basis(n, k), a));
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        KForm sym = Q[k * n + j] + Q[j * n + k];
        if (!sym.is_zero()) {
          fail(i, DSquareReport::Order::Symbol, {j, k}, sym);
          return r;
        }
      }
    for (std::size_t l = 0; l < n; ++l) {
      KForm el = KForm::basis(n, l);
      KForm p = project_A(T, ce_d(L, project_A(T, wedge(el, ei))) + wedge(el, Dei));
      // Q is antisymmetric here, so ½Σ_{k,j} c^l_kj Q_kj = Σ_{k<j} c^l_kj Q_kj.
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = k + 1; j < n; ++j) {
          AlgebraicScalar c = L.c(l, k, j);
          if (!c.is_zero()) p += Q[k * n + j].scaled(c);
        }
      if (!p.is_zero()) {
        fail(i, DSquareReport::Order::FirstDerivative, {l}, p);
        return r;
      }
    }
  }
  return r;
}

KForm D_one_form_explicit(const LieAlgebra& L, const HyperParaStructure& S, const KForm& w) {
  KForm dw = ce_d(L, w);
  KForm a3 = pullback(S.J3, dw);
  AlgebraicScalar half(Rational(1, 2));
  KForm extreme = (dw - a3).scaled(half);
  KForm mixed = (dw + a3).scaled(half);
  return extreme + (mixed + pullback(S.J2, mixed)).scaled(half);
}

KForm project_A3_by_quadric(const HyperParaStructure& S, const KForm& w) {
  if (w.degree() != 3 && !w.is_zero()) throw Error(ErrorCode::WrongDegree, "expected a 3-form");
  std::size_t n = S.dim();
  std::vector<Mask> basis;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z) basis.push_back(bit(x) | bit(y) | bit(z));
  std::size_t N = basis.size();
  std::map<Mask, std::size_t> pos;
  for (std::size_t i = 0; i < N; ++i) pos[basis[i]] = i;
  auto T = triple(S);
  // ops[o] is the N×N matrix of the o-th coefficient operator.
  std::vector<AMatrix> ops(6, AMatrix(N, N));
  for (std::size_t j = 0; j < N; ++j) {
    KForm e(n, 3);
    e.add(basis[j], AlgebraicScalar(1));
    auto cf = b3_coefficient_forms(T, e);
    for (std::size_t o = 0; o < 6; ++o)
      for (const auto& [m, c] : cf[o].terms()) ops[o](pos[m], j) = c;
  }
  AMatrix stacked(6 * N, N);
  AMatrix imagesT(6 * N, N);  // rows span the images
  for (std::size_t o = 0; o < 6; ++o)
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        stacked(o * N + r, c) = ops[o](r, c);
        imagesT(o * N + c, r) = ops[o](r, c);
      }
  auto Bbasis = nullspace(stacked);
  AMatrix im = imagesT;
  auto piv = rref(im);
  std::size_t rA = piv.size();
  if (rA + Bbasis.size() != N)
    throw Error(ErrorCode::NotRepresentable, "A³ and B³ do not span Λ³ for this structure");
  AMatrix M(N, N);
  for (std::size_t a = 0; a < rA; ++a)
    for (std::size_t r = 0; r < N; ++r) M(r, a) = im(a, r);
  for (std::size_t b = 0; b < Bbasis.size(); ++b)
    for (std::size_t r = 0; r < N; ++r) M(r, rA + b) = Bbasis[b][r];
  Vec rhs(N);
  for (const auto& [m, c] : w.terms()) rhs[pos[m]] = c;
  auto sol = solve(M, rhs);
  if (!sol) throw Error(ErrorCode::NoSolution, "A³ ⊕ B³ decomposition failed");
  KForm out(n, 3);
  for (std::size_t a = 0; a < rA; ++a) {
    const auto& x = sol->first[a];
    if (x.is_zero()) continue;
    for (std::size_t r = 0; r < N; ++r)
      if (!im(a, r).is_zero()) out.add(basis[r], x * im(a, r));
  }
  return out;
}

DClosedReport check_D_closed_hpkt(const LieAlgebra& L, const HyperParaStructure& S, const KForm& F) {
  if (F.degree() != 2 && !F.is_zero()) throw Error(ErrorCode::WrongDegree, "expected a 2-form");
  if (!(pullback(S.J3, F) == F) || !(pullback(S.J1, F) == F))
    throw Error(ErrorCode::NotType11, "F is not of type (1,1) for the hyper-paracomplex structure");
  DClosedReport r;
  r.d_closed = D(L, S, F).is_zero();
  AMatrix g = -(two_form_matrix(F) * S.J3);
  if (rank(g) == g.rows() && g.is_symmetric() && compatible_metric(S, g))
    r.induced_hpkt = check_hpkt(L, S, g, false).is_hpkt;
  return r;
}

HpktVerdict check_hpkt(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g, bool with_d2) {
  require_compatible(S, g);
  HpktVerdict v;
  v.kaehler = kaehler_forms(S, g);
  for (int a = 1; a <= 3; ++a) v.daFa[a - 1] = d_a(L, S, a, v.kaehler[a - 1]);
  v.is_hpkt = v.daFa[0] == v.daFa[1] && v.daFa[1] == v.daFa[2];
  v.torsion = v.daFa[0];
  v.d_torsion = ce_d(L, v.torsion);
  v.is_strong = v.is_hpkt && v.d_torsion.is_zero();
  for (int a = 1; a <= 3; ++a) v.lee[a - 1] = lee_form(L, S, g, a);
  v.lee_equal = v.lee[0].theta == v.lee[1].theta && v.lee[1].theta == v.lee[2].theta;
  v.holomorphic = holomorphic_characterization(L, S, g);
  v.characterizations_agree =
      v.holomorphic.b == v.is_hpkt && v.holomorphic.c == v.is_hpkt && v.holomorphic.d == v.is_hpkt;
  if (with_d2) v.d2 = check_d_squared(L, S);
  return v;
}

}  // namespace hyperpara
