#include <doctest.h>

#include <random>

#include "hyperpara/catalog.hpp"
#include "hyperpara/hpkt.hpp"

using namespace hyperpara;

namespace {

KForm random_one_form(std::mt19937& rng, std::size_t n) {
  KForm w(n, 1);
  for (std::size_t i = 0; i < n; ++i) w.add(bit(i), AlgebraicScalar(static_cast<long>(rng() % 5) - 2));
  return w;
}

std::vector<std::string> hpkt_keys() {
  return {"su_mm1_killing:2", "su21_met2", "sl_odd_met1:2", "two_r_sl2c_alt", "heis_r3:1", "heis_r3:2", "heis_sl2r:1"};
}

}  // namespace

TEST_CASE("su(2,1) with the split metric: torsion and its differential") {
  auto e = build("su21_met2");
  auto v = check_hpkt(e.algebra, e.structure, e.metric);
  const auto& L = e.algebra.labels();
  REQUIRE(v.is_hpkt);
  CHECK(form_str(v.torsion, L) == "2 X∧Y∧W − X∧U∧V + X∧S∧T + Y∧U∧S − Y∧V∧T + W∧U∧T + W∧V∧S − Z∧U∧V − Z∧S∧T");
  CHECK(form_str(v.d_torsion, L) == "−4 U∧V∧S∧T");
  CHECK_FALSE(v.is_strong);
  CHECK(v.daFa[0] == v.daFa[1]);
  CHECK(v.daFa[1] == v.daFa[2]);
  CHECK(v.lee_equal);
  CHECK(v.characterizations_agree);
  CHECK(v.d2.nilpotent);
}

TEST_CASE("d_a on forms respects the squares of J_a") {
  auto e = build("su21_met2");
  std::mt19937 rng(21);
  for (int a = 1; a <= 3; ++a) {
    KForm w = random_one_form(rng, e.dim());
    // d_a is conjugate to d, so d_a² = 0
    CHECK(d_a(e.algebra, e.structure, a, d_a(e.algebra, e.structure, a, w)).is_zero());
  }
}

TEST_CASE("Kaehler forms recover the metric") {
  for (const auto& k : catalog_keys()) {
    CAPTURE(k);
    auto e = build(k);
    auto F = kaehler_forms(e.structure, e.metric);
    for (int a = 1; a <= 3; ++a) CHECK(metric_from_form(e.structure, F[a - 1], a) == e.metric);
  }
  auto e = build("heis_r3:1");
  KForm bad = KForm::monomial(e.dim(), {0, 1});
  CHECK_THROWS_AS(metric_from_form(e.structure, bad, 3), Error);
}

TEST_CASE("HPKT verdicts on the catalog") {
  for (const auto& k : hpkt_keys()) {
    CAPTURE(k);
    auto e = build(k);
    auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
    CHECK(v.is_hpkt);
    CHECK(v.characterizations_agree);
    CHECK(v.holomorphic.b);
    CHECK(v.holomorphic.c);
    CHECK(v.holomorphic.d);
    CHECK(v.lee_equal);
    auto t = d_aF_b_table(e.algebra, e.structure, e.metric);
    CHECK(t.diagonal_equal);
  }
}

TEST_CASE("literal 2R + sl(2,C) reading is integrable but not HPKT") {
  auto e = build("two_r_sl2c");
  auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
  CHECK_FALSE(v.is_hpkt);
  CHECK(v.characterizations_agree);
  CHECK_FALSE(v.holomorphic.b);
}

TEST_CASE("explicit D on 1-forms matches the projector definition") {
  std::mt19937 rng(4);
  for (const char* k : {"su21_met2", "heis_r3:1", "heis_sl2r:1"}) {
    auto e = build(k);
    for (int t = 0; t < 5; ++t) {
      KForm w = random_one_form(rng, e.dim());
      CHECK(D(e.algebra, e.structure, w) == D_one_form_explicit(e.algebra, e.structure, w));
    }
  }
}

TEST_CASE("D squared vanishes on integrable entries and detects broken J3") {
  for (const auto& k : catalog_keys()) {
    CAPTURE(k);
    auto e = build(k);
    CHECK(check_d_squared(e.algebra, e.structure).nilpotent);
  }
  auto p = build("perturbed:heis_r3:1:J3flip");
  auto r = check_d_squared(p.algebra, p.structure);
  CHECK_FALSE(r.nilpotent);
  REQUIRE(r.witness.has_value());
  CHECK_FALSE(r.witness_value.is_zero());
  auto s = build("perturbed:heis_r3:1:shear:0,1");
  CHECK_FALSE(check_d_squared(s.algebra, s.structure).nilpotent);
}

TEST_CASE("D-closed Kaehler forms induce HPKT structures") {
  for (const auto& k : catalog_keys()) {
    CAPTURE(k);
    auto e = build(k);
    auto F = kaehler_forms(e.structure, e.metric);
    auto r = check_D_closed_hpkt(e.algebra, e.structure, F[2]);
    bool hpkt = check_hpkt(e.algebra, e.structure, e.metric, false).is_hpkt;
    CHECK(r.d_closed == hpkt);
    REQUIRE(r.induced_hpkt.has_value());
    CHECK(*r.induced_hpkt == hpkt);
  }
  auto e = build("heis_r3:1");
  CHECK_THROWS_AS(check_D_closed_hpkt(e.algebra, e.structure, KForm::monomial(e.dim(), {0, 2})), Error);
}

TEST_CASE("incompatible metrics are rejected") {
  auto e = build("heis_r3:1");
  CHECK_THROWS_AS(check_hpkt(e.algebra, e.structure, AMatrix::identity(e.dim())), Error);
}
