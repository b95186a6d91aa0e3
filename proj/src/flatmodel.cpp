#include "hyperpara/flatmodel.hpp"

#include <map>

#include "hyperpara/linalg.hpp"

namespace hyperpara {

namespace {

PolyMatrix to_poly(const QMatrix& m) {
  PolyMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Polynomial(m(i, j));
  return out;
}

AMatrix to_algebraic(const QMatrix& m) {
  AMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = AlgebraicScalar(m(i, j));
  return out;
}

PolyForm half(const PolyForm& w) { return w.scaled(Rational(1, 2)); }

}  // namespace

FlatChart::FlatChart(std::size_t n) : n_(n) {
  if (n == 0 || 4 * n > kMaxFormDim) throw Error(ErrorCode::UnsupportedParameter, "flat chart needs 1 <= n <= 15");
  std::size_t N = 4 * n;
  for (std::size_t i = 1; i <= N; ++i) coords_.push_back("x" + std::to_string(i));
  QMatrix J2(N, N), J3(N, N);
  std::vector<Rational> g;
  // J e_a = v·e_b inside block o
  auto set = [](QMatrix& J, std::size_t o, std::size_t a, std::size_t b, long v) { J(o + b, o + a) = Rational(v); };
  for (std::size_t o = 0; o < N; o += 4) {
    set(J3, o, 0, 1, 1);
    set(J3, o, 1, 0, -1);
    set(J3, o, 2, 3, 1);
    set(J3, o, 3, 2, -1);
    set(J2, o, 0, 2, 1);
    set(J2, o, 2, 0, 1);
    set(J2, o, 1, 3, -1);
    set(J2, o, 3, 1, -1);
    for (long s : {1, 1, -1, -1}) g.emplace_back(s);
  }
  J_ = {J3 * J2, J2, J3};
  g0_ = QMatrix::diagonal(g);
  auto S = structure();
  auto par = check_paraquaternionic(S);
  if (!par.ok) throw Error(ErrorCode::Schema, "flat chart: " + par.defects.front());
  require_compatible(S, to_algebraic(g0_));
}

HyperParaStructure FlatChart::structure() const {
  return {to_algebraic(J_[0]), to_algebraic(J_[1]), to_algebraic(J_[2])};
}

Polynomial standard_potential(const FlatChart& c) {
  Polynomial mu;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    Polynomial::Exponents e(i + 1, 0);
    e[i] = 2;
    mu += Polynomial::monomial(e, c.g0()(i, i) * Rational(1, 4));
  }
  return mu;
}

PolyForm function_form(const FlatChart& c, const Polynomial& f) { return PolyForm::scalar(c.dim(), f); }

PolyForm poly_d(const PolyForm& w) {
  std::size_t n = w.dim();
  PolyForm out(n, w.degree() + 1);
  for (const auto& [m, p] : w.terms())
    for (std::size_t i = 0; i < n; ++i) {
      if (m & bit(i)) continue;
      Polynomial q = p.partial(i);
      if (q.is_zero()) continue;
      out.add(m | bit(i), std::popcount(below(m, i)) % 2 ? -q : q);
    }
  return out;
}

PolyForm poly_d_a(const FlatChart& c, int a, const PolyForm& w) {
  if (w.dim() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "poly_d_a: chart and form dimensions differ");
  const QMatrix& J = c.J(a);
  PolyForm t = j_action(J, poly_d(j_action(J, w)));
  if (a < 3) return -t;
  return w.degree() % 2 ? -t : t;
}

PolyPair poly_partial_a(const FlatChart& c, int a, const PolyPair& w, bool bar) {
  // u·(x + u·y) = u²·y + u·x
  Rational u2(a == 3 ? -1 : 1);
  Rational s(bar ? -1 : 1);
  PolyForm re = poly_d(w.re) + poly_d_a(c, a, w.im).scaled(u2 * s);
  PolyForm im = poly_d(w.im) + poly_d_a(c, a, w.re).scaled(s);
  return {half(re), half(im)};
}

PotentialForms forms_from_potential(const FlatChart& c, const Polynomial& mu) {
  PolyForm f = function_form(c, mu);
  PolyForm d1 = poly_d_a(c, 1, f), d2 = poly_d_a(c, 2, f), d3 = poly_d_a(c, 3, f);
  PotentialForms out;
  out.F[0] = half(poly_d(d1) - poly_d_a(c, 2, d3));
  out.F[1] = half(poly_d(d2) - poly_d_a(c, 3, d1));
  out.F[2] = -half(poly_d(d3) + poly_d_a(c, 1, d2));
  return out;
}

PolyMatrix metric_from_potential_form(const FlatChart& c, const PolyForm& F, int which) {
  PolyMatrix g = two_form_matrix(F) * to_poly(c.J(which));
  return which == 3 ? -g : g;
}

PolyMatrix hessian_metric(const FlatChart& c, const Polynomial& mu) {
  std::size_t N = c.dim();
  PolyMatrix H(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    Polynomial di = mu.partial(i);
    for (std::size_t j = 0; j < N; ++j) H(i, j) = di.partial(j);
  }
  auto conj = [&](int a) {
    PolyMatrix J = to_poly(c.J(a));
    return J.transpose() * H * J;
  };
  PolyMatrix g = H - conj(1) - conj(2) + conj(3);
  return Polynomial(Rational(1, 2)) * g;
}

PotentialReport potential_equivalences(const FlatChart& c, const Polynomial& mu) {
  PotentialReport r;
  r.forms = forms_from_potential(c, mu);
  const auto& F = r.forms.F;
  for (int a = 1; a <= 3; ++a) r.metric_from_form[a - 1] = metric_from_potential_form(c, F[a - 1], a);
  r.metric_hessian = hessian_metric(c, mu);
  r.metrics_agree = r.metric_from_form[0] == r.metric_hessian && r.metric_from_form[1] == r.metric_hessian &&
                    r.metric_from_form[2] == r.metric_hessian && r.metric_hessian.is_symmetric();

  PolyForm f = function_form(c, mu);
  auto da = [&](int a, const PolyForm& w) { return poly_d_a(c, a, w); };
  auto J = [&](int a, const PolyForm& w) { return j_action(c.J(a), w); };
  r.torsion = -half(da(1, da(2, da(3, f))));
  for (int a = 1; a <= 3; ++a) r.daFa[a - 1] = da(a, F[a - 1]);
  r.hpkt = r.daFa[0] == r.daFa[1] && r.daFa[1] == r.daFa[2];
  r.torsion_matches = r.hpkt && r.torsion == r.daFa[0];

  // F₂ − εF₃ = −2∂₁J₂∂̄₁μ, F₃ + εF₁ = −2∂₂J₃∂̄₂μ, F₁ − iF₂ = −2∂₃J₁∂̄₃μ
  const std::array<std::pair<int, int>, 3> ops{{{1, 2}, {2, 3}, {3, 1}}};
  const std::array<PolyPair, 3> lhs{{{F[1], -F[2]}, {F[2], F[0]}, {F[0], -F[1]}}};
  for (std::size_t k = 0; k < 3; ++k) {
    auto [a, b] = ops[k];
    PolyPair q = poly_partial_a(c, a, {f, PolyForm(c.dim(), 0)}, true);
    PolyPair jq{J(b, q.re), J(b, q.im)};
    PolyPair p = poly_partial_a(c, a, jq, false);
    r.real_pairs[k] = lhs[k] == PolyPair{p.re.scaled(Rational(-2)), p.im.scaled(Rational(-2))};
  }

  PolyForm dm = poly_d(f);
  PolyForm d12 = da(1, da(2, f)), d23 = da(2, da(3, f)), d31 = da(3, da(1, f));
  PolyForm dd1 = poly_d(da(1, f)), dd2 = poly_d(da(2, f)), dd3 = poly_d(da(3, f));
  r.operator_links = d12 == -da(1, J(2, dm)) && d12 == J(1, poly_d(J(1, J(2, dm)))) && d12 == J(1, dd3) &&
                     d12 == -da(2, da(1, f)) &&  //
                     d23 == da(2, J(3, dm)) && d23 == J(2, poly_d(J(1, dm))) && d23 == -J(2, dd1) &&
                     d23 == -da(3, da(2, f)) &&  //
                     d31 == -da(3, J(1, dm)) && d31 == J(3, poly_d(J(3, J(1, dm)))) && d31 == J(3, dd2) &&
                     d31 == -da(1, da(3, f));
  r.anticommute = d12 == -da(2, da(1, f)) && d23 == -da(3, da(2, f)) && d31 == -da(1, da(3, f));
  r.hyper_para_kaehler = dd3 == d12;
  r.full_chain = r.operator_links && d12 == -J(1, F[2]) && d12 == dd3 && d23 == -J(2, F[0]) && d23 == -dd1 &&
                 d31 == J(3, F[1]) && d31 == -dd2;
  return r;
}

PolyForm poly_D(const FlatChart& c, const PolyForm& w) { return project_A(c.triple(), poly_d(w)); }

Polynomial solve_potential(const FlatChart& c, const PolyForm& F3, const SolveOptions& opt) {
  std::size_t N = c.dim();
  if (F3.dim() != N) throw Error(ErrorCode::DimensionMismatch, "solve_potential: F3 has the wrong dimension");
  if (F3.degree() != 2 && !F3.is_zero()) throw Error(ErrorCode::WrongDegree, "solve_potential: F3 must be a 2-form");
  if (!(pullback(c.J(3), F3) == F3) || !(pullback(c.J(1), F3) == F3))
    throw Error(ErrorCode::NotType11, "F3 is not of type (1,1) for the hyper-paracomplex structure");
  if (!poly_D(c, F3).is_zero()) throw Error(ErrorCode::NotDClosed, "F3 is not D-closed");
  int K = -1;
  for (const auto& [m, p] : F3.terms()) K = std::max(K, p.degree());
  if (K + 2 > opt.d_max)
    throw Error(ErrorCode::NoPolynomialSolution,
                "coefficients of degree " + std::to_string(K) + " need μ of degree " + std::to_string(K + 2) +
                    " > d_max = " + std::to_string(opt.d_max));
  Polynomial mu;
  // F₃ is linear in μ and maps degree k+2 to coefficient degree k, so each degree is solved alone.
  for (int k = 0; k <= K; ++k) {
    PolyForm target(N, 2);
    for (const auto& [m, p] : F3.terms()) target.add(m, p.homogeneous_part(k));
    if (target.is_zero()) continue;
    auto mons = monomials_of_degree(N, k + 2);
    using Key = std::pair<Mask, Polynomial::Exponents>;
    std::map<Key, SparseSystem::Row> rows;
    for (std::size_t u = 0; u < mons.size(); ++u) {
      auto img = forms_from_potential(c, Polynomial::monomial(mons[u], Rational(1))).F[2];
      for (const auto& [m, p] : img.terms())
        for (const auto& [e, q] : p.terms()) rows[{m, e}][u] = q;
    }
    for (const auto& [m, p] : target.terms())
      for (const auto& [e, q] : p.terms()) rows.try_emplace({m, e});
    SparseSystem sys(mons.size());
    for (auto& [key, row] : rows) {
      Polynomial coeff = target.coeff(key.first);
      Rational rhs;
      if (auto it = coeff.terms().find(key.second); it != coeff.terms().end()) rhs = it->second;
      if (!sys.add_equation(std::move(row), rhs))
        throw Error(ErrorCode::NoPolynomialSolution,
                    "no polynomial potential of degree " + std::to_string(k + 2) + " reproduces F3");
    }
    auto x = sys.solution();
    for (std::size_t u = 0; u < mons.size(); ++u)
      if (!x[u].is_zero()) mu += Polynomial::monomial(mons[u], x[u]);
  }
  if (!(forms_from_potential(c, mu).F[2] == F3))
    throw Error(ErrorCode::NoSolution, "solve_potential: nonzero residual");
  return mu;
}

Dim4Report dim4_checks(const FlatChart& c, const Polynomial& p, const Polynomial& mu) {
  if (c.n() != 1) throw Error(ErrorCode::UnsupportedParameter, "dim4_checks requires n = 1");
  if (p.constant_term().is_zero())
    throw Error(ErrorCode::UnsupportedParameter, "conformal factor must be nonzero at the origin");
  Dim4Report r;
  PolyMatrix g = p * to_poly(c.g0());
  for (int a = 1; a <= 3; ++a) {
    PolyForm F = two_form_from_matrix(PolyMatrix(g * to_poly(c.J(a))));
    r.daFa[a - 1] = poly_d_a(c, a, F);
  }
  r.hpkt = r.daFa[0] == r.daFa[1] && r.daFa[1] == r.daFa[2];
  Polynomial box, dpdm;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const Rational& s = c.g0()(i, i);
    box += mu.partial(i).partial(i) * s;
    dpdm += p.partial(i) * mu.partial(i) * s;
  }
  r.residual = Polynomial(2) * p - box;
  r.residual_lee = Polynomial(2) * p * p - p * box - Polynomial(2) * dpdm;
  return r;
}

}  // namespace hyperpara
