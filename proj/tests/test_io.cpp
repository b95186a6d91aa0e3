#include <doctest.h>

#include <fstream>

#include "hyperpara/io.hpp"

using namespace hyperpara;

namespace {
Json load(const std::string& name) {
  std::ifstream in(std::string(HP_TEST_DIR) + "/data/" + name);
  return Json::parse(in);
}
}  // namespace

TEST_CASE("scalar serialization") {
  CHECK(to_json(Rational(-3, 4)) == Json("-3/4"));
  CHECK(to_json(Rational(5)) == Json("5"));
  CHECK(rational_from_json(Json("6/8")) == Rational(3, 4));
  CHECK(rational_from_json(Json(7)) == Rational(7));
  CHECK_THROWS_AS(rational_from_json(Json("x/2")), Error);
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), Error);
  auto a = AlgebraicScalar::root_term(Rational(1, 3), 3) + AlgebraicScalar::root_term(Rational(2), 15) + AlgebraicScalar(1);
  Json j = to_json(a);
  CHECK(j.dump() == R"({"terms":[{"roots":[],"coeff":"1"},{"roots":[3],"coeff":"1/3"},{"roots":[3,5],"coeff":"2"}]})");
  CHECK(scalar_from_json(j) == a);
  CHECK(scalar_from_json(Json::parse(R"({"terms":[{"roots":[12],"coeff":"1"}]})")) == AlgebraicScalar::root_term(2, 3));
}

TEST_CASE("algebra and structure round trip") {
  for (const char* k : {"su21_met2", "su_mm1_killing:2", "heis_sl2r:1"}) {
    CAPTURE(k);
    auto e = build(k);
    auto L = algebra_from_json(to_json(e.algebra));
    CHECK(L.labels() == e.algebra.labels());
    CHECK(to_json(L) == to_json(e.algebra));
    Json s{{"J2", to_json(e.structure.J2)}, {"J3", to_json(e.structure.J3)}, {"J1", to_json(e.structure.J1)}, {"metric", to_json(e.metric)}};
    auto in = structure_from_json(s, e.dim());
    CHECK(in.structure.J1 == e.structure.J1);
    CHECK(in.metric == e.metric);
    s["J1"] = to_json(e.structure.J3);
    CHECK_THROWS_AS(structure_from_json(s, e.dim()), Error);
  }
}

TEST_CASE("input entry with expectations") {
  auto e = entry_from_json(load("heis_r3_1_wrong_claim.json"));
  CHECK(e.key == "heis_r3_claimed_strong");
  REQUIRE(e.expected.strong.has_value());
  CHECK(e.expected.strong->source == Source::Input);
  auto r = verify_entry(e, false);
  REQUIRE(r.mismatches.size() == 1);
  CHECK(r.mismatches[0].find("[input]") != std::string::npos);
}

TEST_CASE("schema errors") {
  auto code = [](const Json& j) {
    try {
      algebra_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NoSolution;
  };
  CHECK(code(Json::parse(R"({"labels":["a"],"brackets":[]})")) == ErrorCode::Schema);
  CHECK(code(Json::parse(R"({"dim":2,"brackets":[{"i":0,"j":2,"out":{}}]})")) == ErrorCode::Schema);
  CHECK(code(Json::parse(R"({"dim":2,"brackets":[{"i":0,"j":1,"out":{"z":"1"}}]})")) == ErrorCode::Schema);
  CHECK(code(Json::parse(R"({"dim":2,"brackets":[{"i":0,"j":1,"out":{}},{"i":1,"j":0,"out":{}}]})")) == ErrorCode::Schema);
  CHECK(code(load("broken_jacobi.json")["algebra"]) == ErrorCode::JacobiFailure);
  // [e1, e0] = e0 is stored as [e0, e1] = -e0
  auto L = algebra_from_json(Json::parse(R"({"dim":2,"brackets":[{"i":1,"j":0,"out":{"0":"1"}}]})"));
  CHECK(L.c(0, 0, 1) == AlgebraicScalar(-1));
}

TEST_CASE("forms and potentials") {
  auto e = build("su21_met2");
  KForm T = e.expected.torsion->value;
  CHECK(form_from_terms(form_terms(T), e.dim(), 3) == T);
  auto f3 = poly_form_from_json(load("std_f3.json"), "F3");
  FlatChart c(f3.n);
  CHECK(f3.form == forms_from_potential(c, standard_potential(c)).F[2]);
  Json pj{{"n", 1}, {"mu", polynomial_to_json(standard_potential(c), 4)}};
  CHECK(potential_from_json(pj).mu == standard_potential(c));
  pj["n"] = 0;
  CHECK_THROWS_AS(potential_from_json(pj), Error);
  CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"([{"exps":[1,0],"coeff":"1"}])"), 4), Error);
}

TEST_CASE("reports are deterministic and carry provenance") {
  auto e = build("su21_met2");
  auto r = verify_entry(e);
  Json a = report_json(e, r), b = report_json(e, verify_entry(e));
  CHECK(a.dump() == b.dump());
  CHECK(a["verdict"]["dT"] == "−4 U∧V∧S∧T");
  CHECK(a["expected"]["dT"]["source"] == "paper");
  CHECK(a["engine"] == engine_version());
  CHECK_FALSE(a.contains("timing_ms"));
  CHECK(report_json(e, r, {12.5})["timing_ms"] == 12.5);
  CHECK(form_from_terms(a["verdict"]["dT_terms"], e.dim(), 4) == r.verdict->d_torsion);
  CHECK(report_text(e, r).find("dT = −4 U∧V∧S∧T") != std::string::npos);
}
