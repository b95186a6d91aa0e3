#include <doctest.h>

#include "hyperpara/catalog.hpp"
#include "hyperpara/flatmodel.hpp"
#include "hyperpara/hpkt.hpp"

using namespace hyperpara;

namespace {

// ad_x as a matrix, column j = [x, e_j]
AMatrix ad(const LieAlgebra& L, std::size_t x) {
  AMatrix m(L.dim(), L.dim());
  for (std::size_t j = 0; j < L.dim(); ++j)
    for (const auto& [k, c] : L.structure(x, j)) m(k, j) = c;
  return m;
}

AlgebraicScalar trace(const AMatrix& m) {
  AlgebraicScalar t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

TEST_CASE("flat chart satisfies the paraquaternionic identities") {
  for (std::size_t n : {1u, 2u, 3u}) {
    FlatChart c(n);
    auto S = c.structure();
    CHECK(check_paraquaternionic(S).ok);
    CHECK(check_integrable(LieAlgebra::abelian(4 * n), S).integrable());
    AMatrix g0(4 * n, 4 * n);
    for (std::size_t i = 0; i < 4 * n; ++i) g0(i, i) = AlgebraicScalar(c.g0()(i, i));
    CHECK(compatible_metric(S, g0));
    CHECK_FALSE(compatible_metric(S, AMatrix::identity(4 * n)));
  }
}

TEST_CASE("identity failures are reported") {
  auto e = build("perturbed:heis_r3:1:J3flip");
  auto rep = check_paraquaternionic(e.structure);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.defects.empty());
  auto ok = build("heis_r3:1");
  AMatrix g = ok.metric;
  g(0, 0) = g(0, 0) * AlgebraicScalar(2);
  CHECK_FALSE(compatible_metric(ok.structure, g));
  CHECK(compatibility_defect(ok.structure, g).has_value());
  CHECK_THROWS_AS(require_compatible(ok.structure, g), Error);
}

TEST_CASE("catalog structures are integrable and compatible") {
  for (const auto& k : catalog_keys()) {
    CAPTURE(k);
    auto e = build(k);
    CHECK(check_paraquaternionic(e.structure).ok);
    auto ir = check_integrable(e.algebra, e.structure);
    CHECK(ir.integrable());
    for (const auto& [p, ok] : ir.samples) CHECK(ok);
    CHECK(compatible_metric(e.structure, e.metric));
    for (const auto& F : kaehler_forms(e.structure, e.metric)) CHECK(F.degree() == 2);
  }
}

TEST_CASE("Abelian structures on the Heisenberg entries") {
  for (const char* k : {"heis_r3:1", "heis_r3:2"}) {
    auto e = build(k);
    CHECK(check_abelian(e.algebra, e.structure.J1, AbelianKind::Para));
    CHECK(check_abelian(e.algebra, e.structure.J2, AbelianKind::Para));
    CHECK(check_abelian(e.algebra, e.structure.J3, AbelianKind::Complex));
  }
  auto s = build("su21_met2");
  CHECK_FALSE(check_abelian(s.algebra, s.structure.J3, AbelianKind::Complex));
}

TEST_CASE("non-integrable shear has a nonzero Nijenhuis tensor") {
  auto e = build("perturbed:heis_r3:1:shear:0,1");
  auto ir = check_integrable(e.algebra, e.structure);
  CHECK_FALSE(ir.integrable());
  auto N = nijenhuis(e.algebra, e.structure.J3);
  CHECK(ir.vanishes[2] == N.vanishes());
}

TEST_CASE("Levi-Civita connection of a bi-invariant metric is half the bracket") {
  auto e = build("su_mm1_killing:2");
  auto LC = levi_civita(e.algebra, e.metric);
  CHECK(LC.torsion_free(e.algebra));
  CHECK(LC.preserves_metric(e.metric));
  for (std::size_t i = 0; i < e.dim(); ++i)
    for (std::size_t j = 0; j < e.dim(); ++j) {
      Vec half = e.algebra.bracket(basis_vector(e.dim(), i), basis_vector(e.dim(), j));
      for (auto& c : half) c = c * AlgebraicScalar(Rational(1, 2));
      CHECK(LC.apply(basis_vector(e.dim(), i), basis_vector(e.dim(), j)) == half);
    }
}

TEST_CASE("Ricci of the Killing entry is minus a quarter of the Killing form") {
  auto e = build("su_mm1_killing:2");
  auto ric = ricci(curvature(levi_civita(e.algebra, e.metric), e.algebra));
  std::size_t n = e.dim();
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) CHECK(ric(y, z) == trace(ad(e.algebra, y) * ad(e.algebra, z)) * AlgebraicScalar(Rational(-1, 4)));
  CHECK(einstein_constant(ric, e.metric) == std::optional<AlgebraicScalar>(AlgebraicScalar(-3)));
}

TEST_CASE("HPKT and complex product connections") {
  for (const char* k : {"su21_met2", "heis_r3:1", "su_mm1_killing:2"}) {
    CAPTURE(k);
    auto e = build(k);
    auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
    REQUIRE(v.is_hpkt);
    auto C = hpkt_connection(e.algebra, e.structure, e.metric, v.torsion);
    CHECK(C.preserves_metric(e.metric));
    for (int a = 1; a <= 3; ++a) CHECK(C.preserves(e.structure.J(a)));
    CHECK(lowered_torsion(C, e.algebra, e.metric) == v.torsion);
    auto P = complex_product(e.algebra, e.structure);
    CHECK(P.torsion_free(e.algebra));
    for (int a = 1; a <= 3; ++a) CHECK(P.preserves(e.structure.J(a)));
  }
  auto k = build("su_mm1_killing:2");
  auto v = check_hpkt(k.algebra, k.structure, k.metric, false);
  CHECK(hpkt_connection(k.algebra, k.structure, k.metric, v.torsion).is_zero());
}

TEST_CASE("two formulas for the Lee form differ by the factor 2") {
  for (const auto& k : catalog_keys()) {
    CAPTURE(k);
    auto e = build(k);
    for (int a = 1; a <= 3; ++a) {
      auto l = lee_form(e.algebra, e.structure, e.metric, a);
      CHECK(l.theta_trace == l.theta.scaled(AlgebraicScalar(2)));
    }
  }
}

TEST_CASE("pseudo-orthonormal frame of a neutral metric") {
  auto e = build("su21_met2");
  auto f = pseudo_orthonormal_frame(e.metric);
  int pos = 0, neg = 0;
  for (const auto& nrm : f.norms) {
    CHECK((nrm == AlgebraicScalar(1) || nrm == AlgebraicScalar(-1)));
    (nrm.sign() > 0 ? pos : neg)++;
  }
  CHECK(pos == 4);
  CHECK(neg == 4);
}
