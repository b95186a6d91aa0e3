#include <doctest.h>

#include <random>

#include "hyperpara/flatmodel.hpp"

using namespace hyperpara;

namespace {

Polynomial random_potential(std::mt19937& rng, const FlatChart& c, int max_degree) {
  Polynomial mu = standard_potential(c);
  for (int t = 0; t < 4; ++t) {
    int deg = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_degree - 1));
    auto mons = monomials_of_degree(c.dim(), deg);
    mu += Polynomial::monomial(mons[rng() % mons.size()], Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)));
  }
  return mu;
}

PolyMatrix constant(const QMatrix& m) {
  PolyMatrix p(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = Polynomial(m(i, j));
  return p;
}

PolyForm times(const PolyForm& w, const Polynomial& f) {
  PolyForm out(w.dim(), w.degree());
  for (const auto& [m, p] : w.terms()) out.add(m, p * f);
  return out;
}

}  // namespace

TEST_CASE("standard potential reproduces the flat structure") {
  for (std::size_t n : {1u, 2u}) {
    FlatChart c(n);
    auto r = potential_equivalences(c, standard_potential(c));
    CHECK(r.metric_hessian == constant(c.g0()));
    for (int a = 1; a <= 3; ++a) CHECK(r.forms.F[a - 1] == two_form_from_matrix(constant(c.g0() * c.J(a))));
    CHECK(r.torsion.is_zero());
    CHECK(r.hyper_para_kaehler);
    CHECK(r.full_chain);
  }
}

TEST_CASE("exterior derivative on polynomial forms") {
  FlatChart c(1);
  Polynomial f = Polynomial::monomial({2, 1, 0, 0}, Rational(1));
  PolyForm df = poly_d(function_form(c, f));
  CHECK(df.coeff(bit(0)) == Polynomial::monomial({1, 1, 0, 0}, Rational(2)));
  CHECK(df.coeff(bit(1)) == Polynomial::monomial({2, 0, 0, 0}, Rational(1)));
  CHECK(poly_d(df).is_zero());
  for (int a = 1; a <= 3; ++a) CHECK(poly_d_a(c, a, poly_d_a(c, a, function_form(c, f))).is_zero());
}

TEST_CASE("random potentials satisfy every identity") {
  std::mt19937 rng(2024);
  for (std::size_t n : {1u, 2u}) {
    FlatChart c(n);
    for (int t = 0; t < 6; ++t) {
      Polynomial mu = random_potential(rng, c, 5);
      CAPTURE(mu.str());
      auto r = potential_equivalences(c, mu);
      CHECK(r.metrics_agree);
      CHECK(r.hpkt);
      CHECK(r.torsion_matches);
      CHECK(r.real_pairs == std::array<bool, 3>{true, true, true});
      CHECK(r.operator_links);
      CHECK(r.anticommute);
      CHECK(poly_D(c, r.forms.F[2]).is_zero());
    }
  }
}

TEST_CASE("end links of the chain need a hyper-paraKaehler potential") {
  FlatChart c(1);
  Polynomial mu = standard_potential(c) + Polynomial::monomial({3, 0, 0, 0}, Rational(1));
  auto r = potential_equivalences(c, mu);
  CHECK(r.operator_links);
  CHECK_FALSE(r.hyper_para_kaehler);
  CHECK_FALSE(r.full_chain);
}

TEST_CASE("solver round trip and kernel") {
  std::mt19937 rng(99);
  for (std::size_t n : {1u, 2u}) {
    FlatChart c(n);
    for (int t = 0; t < 4; ++t) {
      auto F3 = forms_from_potential(c, random_potential(rng, c, 5)).F[2];
      Polynomial mu = solve_potential(c, F3);
      CHECK(forms_from_potential(c, mu).F[2] == F3);
    }
  }
  FlatChart c(1);
  auto F3 = forms_from_potential(c, standard_potential(c)).F[2];
  Polynomial mu = solve_potential(c, F3);
  CHECK(mu.degree() == 2);
}

TEST_CASE("solver errors") {
  FlatChart c1(1);
  PolyForm bad(4, 2);
  bad.add(bit(0) | bit(2), Polynomial(Rational(1)));
  try {
    solve_potential(c1, bad);
    FAIL("expected NotType11");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotType11);
  }
  Polynomial mu = standard_potential(c1) + Polynomial::monomial({5, 0, 0, 0}, Rational(1));
  try {
    solve_potential(c1, forms_from_potential(c1, mu).F[2], {4});
    FAIL("expected NoPolynomialSolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPolynomialSolution);
  }
  // a type (1,1) form that is not D-closed: the J-average of e^1∧e^5 times x1 on the n = 2 chart
  FlatChart c2(2);
  PolyForm w(8, 2);
  w.add(bit(0) | bit(4), Polynomial(Rational(1)));
  w = w + pullback(c2.J(3), w);
  w = w + pullback(c2.J(1), w);
  PolyForm xw = times(w, Polynomial::variable(0));
  try {
    solve_potential(c2, xw);
    FAIL("expected NotDClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDClosed);
  }
}

TEST_CASE("conformally flat metrics in dimension four") {
  FlatChart c(1);
  std::mt19937 rng(8);
  for (int t = 0; t < 6; ++t) {
    Polynomial p(Rational(1));
    for (int k = 0; k < 3; ++k) {
      auto mons = monomials_of_degree(4, 1 + static_cast<int>(rng() % 3));
      p += Polynomial::monomial(mons[rng() % mons.size()], Rational(static_cast<long>(rng() % 5) - 2));
    }
    CAPTURE(p.str());
    CHECK(dim4_checks(c, p, standard_potential(c)).hpkt);
  }
  // p = 1 + x1 with mu = mu0 + x1^3/3: zero trace residual, nonzero Lee-form residual
  Polynomial p = Polynomial(Rational(1)) + Polynomial::variable(0);
  Polynomial mu = standard_potential(c) + Polynomial::monomial({3, 0, 0, 0}, Rational(1, 3));
  auto r = dim4_checks(c, p, mu);
  CHECK(r.residual.is_zero());
  CHECK(r.residual_lee == Polynomial::variable(0) * Rational(-1) + Polynomial::monomial({2, 0, 0, 0}, Rational(-2)));
  CHECK_THROWS_AS(dim4_checks(FlatChart(2), p, mu), Error);
}
