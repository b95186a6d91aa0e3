#include <doctest.h>

#include <random>

#include "hyperpara/flatmodel.hpp"
#include "hyperpara/forms.hpp"
#include "hyperpara/hpkt.hpp"

using namespace hyperpara;

namespace {

KForm random_form(std::mt19937& rng, std::size_t n, int k, int terms = 5) {
  KForm w(n, k);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::size_t> idx;
    for (int i = 0; i < k; ++i) idx.push_back(rng() % n);
    w += KForm::monomial(n, idx, AlgebraicScalar(static_cast<long>(rng() % 7) - 3));
  }
  return w;
}

AMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  AMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = AlgebraicScalar(static_cast<long>(rng() % 5) - 2);
  return m;
}

JTriple<AlgebraicScalar> flat_triple(std::size_t n) { return triple(FlatChart(n).structure()); }

}  // namespace

TEST_CASE("wedge signs and determinant normalization") {
  auto e0 = KForm::basis(4, 0), e1 = KForm::basis(4, 1), e2 = KForm::basis(4, 2);
  CHECK(wedge(e1, e0) == -wedge(e0, e1));
  CHECK(wedge(e0, e0).is_zero());
  CHECK(KForm::monomial(4, {2, 0, 1}) == wedge(wedge(e0, e1), e2));
  KForm w = wedge(e0, e1);
  std::vector<AlgebraicScalar> x{1, 0, 0, 0}, y{0, 1, 0, 0};
  CHECK(evaluate(w, {x, y}) == AlgebraicScalar(1));
  CHECK(evaluate(w, {y, x}) == AlgebraicScalar(-1));
  CHECK(w.component({1, 0}) == AlgebraicScalar(-1));
}

TEST_CASE("wedge is associative and graded commutative") {
  std::mt19937 rng(7);
  for (int t = 0; t < 25; ++t) {
    int p = 1 + static_cast<int>(rng() % 2), q = 1 + static_cast<int>(rng() % 2);
    KForm a = random_form(rng, 6, p), b = random_form(rng, 6, q), c = random_form(rng, 6, 1);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a, b) == wedge(b, a).scaled(AlgebraicScalar((p * q) % 2 ? -1 : 1)));
  }
}

TEST_CASE("pullback against direct evaluation") {
  std::mt19937 rng(5);
  for (int t = 0; t < 15; ++t) {
    std::size_t n = 5;
    AMatrix M = random_matrix(rng, n), N = random_matrix(rng, n);
    KForm w = random_form(rng, n, 2 + static_cast<int>(rng() % 2));
    KForm p = pullback(M, w);
    // oracle: (M*w)(e_i, e_j, …) = w(M e_i, M e_j, …) with M e_i the i-th column
    for (const auto& [m, c] : p.terms()) {
      std::vector<std::vector<AlgebraicScalar>> cols;
      for (auto i : mask_indices(m)) {
        std::vector<AlgebraicScalar> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = M(r, i);
        cols.push_back(v);
      }
      CHECK(evaluate(w, cols) == c);
    }
    CHECK(pullback(M * N, w) == pullback(N, pullback(M, w)));
    CHECK(pullback(AMatrix::identity(n), w) == w);
  }
}

TEST_CASE("two-form matrix round trip and J action sign") {
  std::mt19937 rng(9);
  KForm w = random_form(rng, 6, 2);
  CHECK(two_form_from_matrix(two_form_matrix(w)) == w);
  AMatrix J = FlatChart(1).structure().J3;
  KForm a = KForm::basis(4, 0);
  CHECK(j_action(J, a) == -pullback(J, a));
  KForm b = wedge(a, KForm::basis(4, 2));
  CHECK(j_action(J, b) == pullback(J, b));
}

TEST_CASE("form strings use labels and signs") {
  std::vector<std::string> L{"U", "V", "S", "T"};
  KForm w = KForm::monomial(4, {0, 1, 2, 3}, AlgebraicScalar(-4));
  CHECK(form_str(w, L) == "−4 U∧V∧S∧T");
  CHECK(form_str(KForm(4, 2), L) == "0");
  KForm v = KForm::monomial(4, {0, 3}) + KForm::monomial(4, {1, 2}, AlgebraicScalar(Rational(1, 2)));
  CHECK(form_str(v, L) == "U∧T + 1/2 V∧S");
}

TEST_CASE("dagger identity and A2/B2 projectors") {
  std::mt19937 rng(13);
  for (std::size_t n : {1u, 2u}) {
    auto T = flat_triple(n);
    for (int t = 0; t < 10; ++t) {
      KForm w = random_form(rng, 4 * n, 2, 8);
      KForm d = dagger(T, w);
      CHECK(dagger(T, d) == d.scaled(AlgebraicScalar(2)) + w.scaled(AlgebraicScalar(3)));
      KForm a = project_A2(T, w), b = project_B2(T, w);
      CHECK(a + b == w);
      CHECK(project_A2(T, a) == a);
      CHECK(project_B2(T, b) == b);
      CHECK(project_A2(T, b).is_zero());
      CHECK(dagger(T, a) == -a);
      CHECK(dagger(T, b) == b.scaled(AlgebraicScalar(3)));
      CHECK(project_A(T, w) == a);
    }
  }
}

TEST_CASE("A3 projection agrees with the quadric construction") {
  std::mt19937 rng(17);
  auto S = FlatChart(2).structure();
  auto T = triple(S);
  for (int t = 0; t < 6; ++t) {
    KForm w = random_form(rng, 8, 3, 6);
    KForm a = project_A(T, w);
    CHECK(project_A(T, a) == a);
    CHECK(in_B3_by_quadric(T, w - a));
    CHECK(project_A3_by_quadric(S, w) == a);
  }
}
