#include "hyperpara/structures.hpp"

#include "hyperpara/linalg.hpp"

namespace hyperpara {

namespace {

AlgebraicScalar gdot(const AMatrix& g, const Vec& x, const Vec& y) {
  AlgebraicScalar s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!y[j].is_zero() && !g(i, j).is_zero()) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

bool vec_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec vsub(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vec vscale(Vec a, const AlgebraicScalar& s) {
  for (auto& x : a) x = x * s;
  return a;
}

Vec sparse_dense(std::size_t n, const SparseVec& s) {
  Vec v(n);
  for (const auto& [k, x] : s) v[k] = x;
  return v;
}

}  // namespace

HyperParaStructure HyperParaStructure::from_J2_J3(const AMatrix& J2, const AMatrix& J3) {
  if (J2.rows() != J3.rows() || !J2.square() || !J3.square())
    throw Error(ErrorCode::DimensionMismatch, "structure matrices must be square of equal size");
  return {J3 * J2, J2, J3};
}

const AMatrix& HyperParaStructure::J(int a) const {
  switch (a) {
    case 1: return J1;
    case 2: return J2;
    case 3: return J3;
    default: throw Error(ErrorCode::InvalidIndex, "structure index must be 1, 2 or 3");
  }
}

ParaquaternionicReport check_paraquaternionic(const HyperParaStructure& S) {
  ParaquaternionicReport r;
  std::size_t n = S.dim();
  if (S.J2.rows() != n || S.J3.rows() != n || !S.J1.square() || !S.J2.square() || !S.J3.square()) {
    r.ok = false;
    r.defects.push_back("matrices are not square of equal size");
    return r;
  }
  AMatrix I = AMatrix::identity(n);
  auto need = [&](bool cond, const char* what) {
    if (!cond) {
      r.ok = false;
      r.defects.emplace_back(what);
    }
  };
  need(S.J1 * S.J1 == I, "J1^2 != 1");
  need(S.J2 * S.J2 == I, "J2^2 != 1");
  need(S.J3 * S.J3 == -I, "J3^2 != -1");
  need(S.J1 * S.J2 == S.J3, "J1J2 != J3");
  need(S.J2 * S.J1 == -S.J3, "J2J1 != -J3");
  return r;
}

NijenhuisTensor nijenhuis(const LieAlgebra& L, const AMatrix& J) {
  std::size_t n = L.dim();
  if (J.rows() != n || J.cols() != n) throw Error(ErrorCode::DimensionMismatch, "nijenhuis: matrix size");
  AMatrix J2 = J * J;
  NijenhuisTensor N;
  N.dim = n;
  std::vector<Vec> Je(n);
  for (std::size_t i = 0; i < n; ++i) Je[i] = J.column(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec ei = basis_vector(n, i);
      Vec ej = basis_vector(n, j);
      Vec v = L.bracket(Je[i], Je[j]);
      Vec a = J2.apply(sparse_dense(n, L.structure(i, j)));
      Vec b = J.apply(L.bracket(Je[i], ej));
      Vec c = J.apply(L.bracket(ei, Je[j]));
      for (std::size_t k = 0; k < n; ++k) v[k] = v[k] + a[k] - b[k] - c[k];
      if (!vec_zero(v)) N.nonzero.push_back({{i, j}, std::move(v)});
    }
  return N;
}

bool HyperboloidPoint::on_quadric() const {
  AlgebraicScalar q = c1 * c1 + c2 * c2 - c3 * c3;
  return q == AlgebraicScalar(sheet == Sheet::Complex ? -1 : 1);
}

AMatrix HyperboloidPoint::combine(const HyperParaStructure& S) const {
  return c1 * S.J1 + c2 * S.J2 + c3 * S.J3;
}

std::string HyperboloidPoint::str() const {
  return "(" + c1.str() + ", " + c2.str() + ", " + c3.str() + ")" + (sheet == Sheet::Complex ? " complex" : " para");
}

std::vector<HyperboloidPoint> default_hyperboloid_samples() {
  using Sh = HyperboloidPoint::Sheet;
  AlgebraicScalar a(Rational(5, 4)), b(Rational(3, 4)), z(0);
  return {{a, z, b, Sh::Para}, {z, a, b, Sh::Para}, {z, b, a, Sh::Complex}, {b, z, a, Sh::Complex}};
}

IntegrabilityReport check_integrable(const LieAlgebra& L, const HyperParaStructure& S,
                                     const std::vector<HyperboloidPoint>& samples) {
  IntegrabilityReport r;
  for (int a = 1; a <= 3; ++a) r.vanishes[a - 1] = nijenhuis(L, S.J(a)).vanishes();
  for (const auto& p : samples) {
    if (!p.on_quadric()) throw Error(ErrorCode::Schema, "sample point " + p.str() + " is off the quadric");
    r.samples.emplace_back(p, nijenhuis(L, p.combine(S)).vanishes());
  }
  return r;
}

bool check_abelian(const LieAlgebra& L, const AMatrix& J, AbelianKind kind) {
  std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec lhs = L.bracket(J.column(i), J.column(j));
      Vec rhs = sparse_dense(n, L.structure(i, j));
      if (kind == AbelianKind::Para) rhs = vscale(rhs, AlgebraicScalar(-1));
      if (lhs != rhs) return false;
    }
  return true;
}

std::optional<int> compatibility_defect(const HyperParaStructure& S, const AMatrix& g) {
  if (!g.is_symmetric() || g.rows() != S.dim()) return 0;
  if (rank(g) < g.rows()) return 0;
  for (int a = 1; a <= 3; ++a) {
    const AMatrix& J = S.J(a);
    AMatrix lhs = J.transpose() * g * J;
    if (!(lhs == (a == 3 ? g : -g))) return a;
  }
  return std::nullopt;
}

bool compatible_metric(const HyperParaStructure& S, const AMatrix& g) { return !compatibility_defect(S, g); }

void require_compatible(const HyperParaStructure& S, const AMatrix& g) {
  if (auto d = compatibility_defect(S, g)) {
    if (*d == 0) throw Error(ErrorCode::IncompatibleMetric, "metric is not symmetric and nondegenerate");
    throw Error(ErrorCode::IncompatibleMetric, "metric fails compatibility with J" + std::to_string(*d));
  }
}

KForm kaehler_form(const AMatrix& g, const AMatrix& J) {
  AMatrix F = g * J;
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = i; j < F.cols(); ++j)
      if (!(F(i, j) == -F(j, i)))
        throw Error(ErrorCode::IncompatibleMetric, "g(·, J·) is not antisymmetric");
  return two_form_from_matrix(F);
}

std::array<KForm, 3> kaehler_forms(const HyperParaStructure& S, const AMatrix& g) {
  return {kaehler_form(g, S.J1), kaehler_form(g, S.J2), kaehler_form(g, S.J3)};
}

OrthogonalFrame orthogonal_frame(const AMatrix& g) {
  std::size_t n = g.rows();
  std::vector<Vec> W;
  for (std::size_t i = 0; i < n; ++i) W.push_back(basis_vector(n, i));
  OrthogonalFrame out;
  while (!W.empty()) {
    std::size_t pick = W.size();
    for (std::size_t k = 0; k < W.size() && pick == W.size(); ++k)
      if (!gdot(g, W[k], W[k]).is_zero()) pick = k;
    Vec f;
    if (pick != W.size()) {
      f = W[pick];
    } else {
      // Every remaining vector is null: a pair with g(w_a, w_b) ≠ 0 gives a non-null sum.
      for (std::size_t a = 0; a < W.size() && pick == W.size(); ++a)
        for (std::size_t b = a + 1; b < W.size(); ++b)
          if (!gdot(g, W[a], W[b]).is_zero()) {
            pick = a;
            f = W[a];
            for (std::size_t t = 0; t < n; ++t) f[t] += W[b][t];
            break;
          }
      if (pick == W.size()) throw Error(ErrorCode::Degenerate, "metric is degenerate");
    }
    AlgebraicScalar N = gdot(g, f, f);
    AlgebraicScalar Ninv = N.inverse();
    W.erase(W.begin() + static_cast<std::ptrdiff_t>(pick));
    std::vector<Vec> next;
    for (auto& w : W) {
      AlgebraicScalar p = gdot(g, w, f);
      Vec r = p.is_zero() ? w : vsub(w, vscale(f, p * Ninv));
      if (!vec_zero(r)) next.push_back(std::move(r));
    }
    W = std::move(next);
    out.vectors.push_back(std::move(f));
    out.norms.push_back(N);
  }
  return out;
}

OrthogonalFrame pseudo_orthonormal_frame(const AMatrix& g) {
  OrthogonalFrame f = orthogonal_frame(g);
  for (std::size_t i = 0; i < f.vectors.size(); ++i) {
    if (!f.norms[i].is_rational())
      throw Error(ErrorCode::NotRepresentable, "frame normalization needs a root of an irrational norm");
    Rational q = f.norms[i].rational();
    AlgebraicScalar s = AlgebraicScalar::sqrt(q.abs()).inverse();
    f.vectors[i] = vscale(f.vectors[i], s);
    f.norms[i] = AlgebraicScalar(q.sign());
  }
  return f;
}

Vec InvariantConnection::apply(const Vec& x, const Vec& y) const {
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    Vec v = lambda[i].apply(y);
    for (std::size_t k = 0; k < dim(); ++k) out[k] += x[i] * v[k];
  }
  return out;
}

bool InvariantConnection::is_zero() const {
  for (const auto& m : lambda)
    if (!m.is_zero()) return false;
  return true;
}

std::vector<Vec> InvariantConnection::torsion(const LieAlgebra& L) const {
  std::size_t n = dim();
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec t = vsub(lambda[i].column(j), lambda[j].column(i));
      for (const auto& [k, v] : L.structure(i, j)) t[k] -= v;
      out.push_back(std::move(t));
    }
  return out;
}

bool InvariantConnection::torsion_free(const LieAlgebra& L) const {
  for (const auto& t : torsion(L))
    if (!vec_zero(t)) return false;
  return true;
}

bool InvariantConnection::preserves_metric(const AMatrix& g) const {
  for (const auto& l : lambda)
    if (!(l.transpose() * g + g * l).is_zero()) return false;
  return true;
}

bool InvariantConnection::preserves(const AMatrix& J) const {
  for (const auto& l : lambda)
    if (!(l * J - J * l).is_zero()) return false;
  return true;
}

std::string kind_name(InvariantConnection::Kind k) {
  switch (k) {
    case InvariantConnection::Kind::LeviCivita: return "levi_civita";
    case InvariantConnection::Kind::Hpkt: return "hpkt";
    case InvariantConnection::Kind::LeftFlat: return "left_flat";
    case InvariantConnection::Kind::ComplexProduct: return "complex_product";
  }
  return "?";
}

InvariantConnection levi_civita(const LieAlgebra& L, const AMatrix& g) {
  std::size_t n = L.dim();
  if (g.rows() != n) throw Error(ErrorCode::DimensionMismatch, "levi_civita: metric size");
  AMatrix ginv = inverse(g);
  // gb[i][j][z] = g([e_i,e_j], e_z)
  auto gb = [&](std::size_t i, std::size_t j, std::size_t z) {
    AlgebraicScalar s;
    for (const auto& [k, v] : L.structure(i, j))
      if (!g(k, z).is_zero()) s += v * g(k, z);
    return s;
  };
  InvariantConnection C;
  C.kind = InvariantConnection::Kind::LeviCivita;
  C.lambda.assign(n, AMatrix(n, n));
  AlgebraicScalar half(Rational(1, 2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec low(n);
      bool any = false;
      for (std::size_t z = 0; z < n; ++z) {
        low[z] = (gb(i, j, z) - gb(j, z, i) + gb(z, i, j)) * half;
        any = any || !low[z].is_zero();
      }
      if (!any) continue;
      Vec up = ginv.apply(low);
      for (std::size_t k = 0; k < n; ++k) C.lambda[i](k, j) = up[k];
    }
  return C;
}

KForm lowered_torsion(const InvariantConnection& C, const LieAlgebra& L, const AMatrix& g) {
  std::size_t n = L.dim();
  auto tors = C.torsion(L);
  // Full table Tl[i][j][z] = g(T(e_i,e_j), e_z).
  std::vector<AlgebraicScalar> Tl(n * n * n);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      Vec low = g.transpose().apply(tors[p]);
      for (std::size_t z = 0; z < n; ++z) {
        Tl[(i * n + j) * n + z] = low[z];
        Tl[(j * n + i) * n + z] = -low[z];
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t z = 0; z < n; ++z)
        if (!(Tl[(i * n + j) * n + z] == -Tl[(i * n + z) * n + j]))
          throw Error(ErrorCode::NotRepresentable, "torsion is not totally skew-symmetric");
  KForm T(n, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t z = j + 1; z < n; ++z) T.add(bit(i) | bit(j) | bit(z), Tl[(i * n + j) * n + z]);
  return T;
}

InvariantConnection hpkt_connection(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g,
                                    const KForm& T) {
  std::size_t n = L.dim();
  InvariantConnection C = levi_civita(L, g);
  C.kind = InvariantConnection::Kind::Hpkt;
  AMatrix ginv = inverse(g);
  AlgebraicScalar half(Rational(1, 2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec low(n);
      bool any = false;
      for (std::size_t z = 0; z < n; ++z) {
        low[z] = T.component({i, j, z}) * half;
        any = any || !low[z].is_zero();
      }
      if (!any) continue;
      Vec up = ginv.apply(low);
      for (std::size_t k = 0; k < n; ++k) C.lambda[i](k, j) += up[k];
    }
  if (!C.preserves_metric(g)) throw Error(ErrorCode::NoSolution, "HPKT connection does not preserve g");
  for (int a = 1; a <= 3; ++a)
    if (!C.preserves(S.J(a)))
      throw Error(ErrorCode::NoSolution, "HPKT connection does not preserve J" + std::to_string(a));
  if (!(lowered_torsion(C, L, g) == T)) throw Error(ErrorCode::NoSolution, "HPKT connection torsion differs from T");
  return C;
}

InvariantConnection complex_product(const LieAlgebra& L, const HyperParaStructure& S) {
  std::size_t n = L.dim();
  // Commutant of {J₁, J₂}: X with XJ = JX.
  AMatrix eqs(2 * n * n, n * n);
  std::size_t row = 0;
  for (const AMatrix* J : {&S.J1, &S.J2})
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s, ++row)
        for (std::size_t t = 0; t < n; ++t) {
          // (XJ − JX)(r,s) = Σ_t X(r,t)J(t,s) − J(r,t)X(t,s)
          if (!(*J)(t, s).is_zero()) eqs(row, r * n + t) += (*J)(t, s);
          if (!(*J)(r, t).is_zero()) eqs(row, t * n + s) -= (*J)(r, t);
        }
  auto comm = nullspace(eqs);
  std::size_t m = comm.size();
  // Unknowns x_{i,b}: Λ_i = Σ_b x_{i,b} C_b. Torsion-free: Λ_i e_j − Λ_j e_i = [e_i, e_j].
  std::size_t unknowns = n * m;
  std::size_t neq = n * (n - 1) / 2 * n;
  AMatrix A(neq, unknowns);
  Vec rhs(neq);
  row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec br = sparse_dense(n, L.structure(i, j));
      for (std::size_t k = 0; k < n; ++k, ++row) {
        for (std::size_t b = 0; b < m; ++b) {
          A(row, i * m + b) += comm[b][k * n + j];
          A(row, j * m + b) -= comm[b][k * n + i];
        }
        rhs[row] = br[k];
      }
    }
  auto sol = solve(A, rhs);
  if (!sol) throw Error(ErrorCode::NoSolution, "no torsion-free connection preserves J1, J2, J3");
  if (sol->second != 0)
    throw Error(ErrorCode::NonUnique, "complex product connection not unique (kernel dimension " +
                                          std::to_string(sol->second) + ")");
  InvariantConnection C;
  C.kind = InvariantConnection::Kind::ComplexProduct;
  C.lambda.assign(n, AMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < m; ++b) {
      const auto& x = sol->first[i * m + b];
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
          if (!comm[b][k * n + j].is_zero()) C.lambda[i](k, j) += x * comm[b][k * n + j];
    }
  return C;
}

bool Curvature::is_zero() const {
  for (const auto& r : R)
    if (!r.is_zero()) return false;
  return true;
}

Curvature curvature(const InvariantConnection& C, const LieAlgebra& L) {
  std::size_t n = L.dim();
  Curvature K;
  K.dim = n;
  K.R.assign(n * n, AMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      AMatrix r = C.lambda[i] * C.lambda[j] - C.lambda[j] * C.lambda[i];
      for (const auto& [k, v] : L.structure(i, j)) r = r - v * C.lambda[k];
      K.R[j * n + i] = -r;
      K.R[i * n + j] = std::move(r);
    }
  return K;
}

AMatrix ricci(const Curvature& R) {
  std::size_t n = R.dim;
  AMatrix ric(n, n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) {
      AlgebraicScalar s;
      for (std::size_t i = 0; i < n; ++i) s += R.at(i, y)(i, z);
      ric(y, z) = s;
    }
  return ric;
}

KForm ricci_two_form(const Curvature& R, const AMatrix& g, const AMatrix& J) {
  std::size_t n = R.dim;
  AMatrix M = inverse(g) * J.transpose() * g;
  KForm rho(n, 2);
  AlgebraicScalar half(Rational(1, 2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const AMatrix& r = R.at(i, j);
      AlgebraicScalar tr;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (!M(k, l).is_zero() && !r(l, k).is_zero()) tr += M(k, l) * r(l, k);
      rho.add(bit(i) | bit(j), tr * half);
    }
  return rho;
}

std::optional<AlgebraicScalar> einstein_constant(const AMatrix& ric, const AMatrix& B) {
  std::optional<AlgebraicScalar> c;
  for (std::size_t i = 0; i < B.rows() && !c; ++i)
    for (std::size_t j = 0; j < B.cols() && !c; ++j)
      if (!B(i, j).is_zero()) c = ric(i, j) / B(i, j);
  if (!c) return ric.is_zero() ? std::optional<AlgebraicScalar>(AlgebraicScalar(0)) : std::nullopt;
  if (!(ric == *c * B)) return std::nullopt;
  return c;
}

KForm codifferential(const LieAlgebra& L, const AMatrix& g, const KForm& F) {
  std::size_t n = L.dim();
  if (F.degree() != 2 && !F.is_zero()) throw Error(ErrorCode::WrongDegree, "codifferential expects a 2-form");
  InvariantConnection lc = levi_civita(L, g);
  OrthogonalFrame fr = orthogonal_frame(g);
  AMatrix Fm = two_form_matrix(F);
  auto Fv = [&](const Vec& x, const Vec& y) {
    AlgebraicScalar s;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!y[j].is_zero() && !Fm(i, j).is_zero()) s += x[i] * Fm(i, j) * y[j];
    }
    return s;
  };
  KForm out(n, 1);
  for (std::size_t x = 0; x < n; ++x) {
    Vec ex = basis_vector(n, x);
    AlgebraicScalar total;
    for (std::size_t a = 0; a < fr.vectors.size(); ++a) {
      const Vec& f = fr.vectors[a];
      // (∇_f F)(f, X) = −F(∇_f f, X) − F(f, ∇_f X)
      AlgebraicScalar v = -Fv(lc.apply(f, f), ex) - Fv(f, lc.apply(f, ex));
      total += v / fr.norms[a];
    }
    out.add(bit(x), -total);
  }
  return out;
}

LeeForm lee_form(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g, int a) {
  std::size_t n = L.dim();
  const AMatrix& J = S.J(a);
  KForm F = kaehler_form(g, J);
  LeeForm out;
  out.theta = -pullback(J * J * J, codifferential(L, g, F));

  KForm dF = ce_d(L, F);
  OrthogonalFrame fr = orthogonal_frame(g);
  AMatrix J2 = J * J;
  out.theta_trace = KForm(n, 1);
  for (std::size_t x = 0; x < n; ++x) {
    Vec j2x = J2.column(x);
    AlgebraicScalar s;
    for (std::size_t i = 0; i < fr.vectors.size(); ++i)
      s += evaluate(dF, {fr.vectors[i], J.apply(fr.vectors[i]), j2x}) / fr.norms[i];
    out.theta_trace.add(bit(x), s);
  }

  if (out.theta == out.theta_trace) {
    out.relation = "equal";
  } else if (out.theta.is_zero() || out.theta_trace.is_zero()) {
    out.relation = "unrelated";
  } else {
    const auto& [m, c] = *out.theta.terms().begin();
    AlgebraicScalar ratio = out.theta_trace.coeff(m) / c;
    out.relation = out.theta.scaled(ratio) == out.theta_trace ? "proportional " + ratio.str() : "unrelated";
  }
  return out;
}

}  // namespace hyperpara
