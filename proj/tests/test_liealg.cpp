#include <doctest.h>

#include <random>

#include "hyperpara/forms.hpp"
#include "hyperpara/liealg.hpp"

using namespace hyperpara;

namespace {

const ComplexScalar kI = ComplexScalar::i_unit();

MatrixBasis sl2() {
  MatrixBasis b;
  b.labels = {"H", "E", "F"};
  b.mats = {elementary(2, 1, 1) - elementary(2, 2, 2), elementary(2, 1, 2), elementary(2, 2, 1)};
  return b;
}

// [X_i, Y_i] = Z
LieAlgebra heisenberg() { return LieAlgebra({"X", "Y", "Z"}, {{0, 1, {{2, AlgebraicScalar(1)}}}}); }

KForm random_form(std::mt19937& rng, std::size_t n, int k) {
  KForm w(n, k);
  for (int t = 0; t < 4; ++t) {
    std::vector<std::size_t> idx;
    for (int i = 0; i < k; ++i) idx.push_back(rng() % n);
    w += KForm::monomial(n, idx, AlgebraicScalar(static_cast<long>(rng() % 7) - 3));
  }
  return w;
}

}  // namespace

TEST_CASE("structure constants of sl(2,R) from matrices") {
  auto L = from_matrix_basis(sl2());
  // hand values: [H,E] = 2E, [H,F] = -2F, [E,F] = H
  CHECK(L.c(1, 0, 1) == AlgebraicScalar(2));
  CHECK(L.c(2, 0, 2) == AlgebraicScalar(-2));
  CHECK(L.c(0, 1, 2) == AlgebraicScalar(1));
  CHECK(L.c(0, 2, 1) == AlgebraicScalar(-1));
  CHECK(L.c(1, 1, 2).is_zero());
  CHECK_FALSE(L.jacobi_violation());
}

TEST_CASE("su(2) realized by anti-Hermitian matrices") {
  MatrixBasis b;
  b.labels = {"A", "B", "C"};
  b.mats = {kI * (elementary(2, 1, 1) - elementary(2, 2, 2)), elementary(2, 1, 2) - elementary(2, 2, 1),
            kI * (elementary(2, 1, 2) + elementary(2, 2, 1))};
  auto L = from_matrix_basis(b);
  // [A,B] = 2C, [B,C] = 2A, [C,A] = 2B
  CHECK(L.c(2, 0, 1) == AlgebraicScalar(2));
  CHECK(L.c(0, 1, 2) == AlgebraicScalar(2));
  CHECK(L.c(1, 2, 0) == AlgebraicScalar(2));
  auto B = trace_form(b);
  CHECK(B(0, 0) == AlgebraicScalar(-1));
  CHECK(check_biinvariant(L, B));
}

TEST_CASE("trace form of sl(2,R) is bi-invariant and a generic metric is not") {
  auto b = sl2();
  auto L = from_matrix_basis(b);
  auto B = trace_form(b);
  CHECK(B(0, 0) == AlgebraicScalar(1));
  CHECK(B(1, 2) == AlgebraicScalar(Rational(1, 2)));
  CHECK(B(1, 1).is_zero());
  CHECK(check_biinvariant(L, B));
  CHECK_FALSE(check_biinvariant(L, AMatrix::identity(3)));
}

TEST_CASE("matrix basis errors") {
  MatrixBasis dep = sl2();
  dep.mats[2] = dep.mats[1];
  CHECK_THROWS_AS(from_matrix_basis(dep), Error);
  MatrixBasis open;
  open.labels = {"E", "F"};
  open.mats = {elementary(2, 1, 2), elementary(2, 2, 1)};
  try {
    from_matrix_basis(open);
    FAIL("expected NotClosedUnderBracket");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClosedUnderBracket);
  }
}

TEST_CASE("Jacobi failure names the triple, unchecked construction keeps it") {
  std::vector<LieAlgebra::Bracket> br = {{0, 1, {{1, AlgebraicScalar(2)}}},
                                         {0, 2, {{2, AlgebraicScalar(-2)}}},
                                         {1, 2, {{1, AlgebraicScalar(1)}}}};
  try {
    LieAlgebra({"H", "E", "F"}, br);
    FAIL("expected JacobiFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::JacobiFailure);
    CHECK(std::string(e.what()).find("(H, E, F)") != std::string::npos);
  }
  auto L = LieAlgebra::unchecked({"H", "E", "F"}, br);
  CHECK(L.jacobi_violation().has_value());
  // d² ≠ 0 detects the broken bracket
  KForm dH = ce_d(L, KForm::basis(3, 1));
  CHECK_FALSE(ce_d(L, dH).is_zero());
}

TEST_CASE("brackets are antisymmetric and bilinear") {
  auto L = from_matrix_basis(sl2());
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    Vec x(3), y(3);
    for (auto* v : {&x, &y})
      for (auto& c : *v) c = AlgebraicScalar(static_cast<long>(rng() % 9) - 4);
    Vec xy = L.bracket(x, y), yx = L.bracket(y, x);
    for (std::size_t k = 0; k < 3; ++k) CHECK(xy[k] == -yx[k]);
  }
}

TEST_CASE("Chevalley-Eilenberg differential") {
  auto H = heisenberg();
  // d e^Z = -e^X∧e^Y
  CHECK(ce_d(H, KForm::basis(3, 2)) == KForm::monomial(3, {0, 1}, AlgebraicScalar(-1)));
  CHECK(ce_d(H, KForm::basis(3, 0)).is_zero());
  auto L = from_matrix_basis(sl2());
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    int p = 1 + static_cast<int>(rng() % 2);
    KForm a = random_form(rng, 3, p), b = random_form(rng, 3, 1);
    CHECK(ce_d(L, ce_d(L, a)).is_zero());
    KForm lhs = ce_d(L, wedge(a, b));
    KForm rhs = wedge(ce_d(L, a), b) + wedge(a, ce_d(L, b)).scaled(AlgebraicScalar(p % 2 ? -1 : 1));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("abelian algebra and index lookup") {
  auto A = LieAlgebra::abelian(4);
  CHECK(A.is_abelian());
  CHECK_FALSE(heisenberg().is_abelian());
  CHECK(heisenberg().index_of("Z") == std::optional<std::size_t>(2));
  CHECK_FALSE(heisenberg().index_of("Q"));
  CHECK_THROWS_AS(LieAlgebra({"X", "Y"}, {{0, 5, {}}}), Error);
}
