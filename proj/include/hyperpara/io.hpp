#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "hyperpara/catalog.hpp"
#include "hyperpara/flatmodel.hpp"
#include "hyperpara/numeric.hpp"

namespace hyperpara {

using Json = nlohmann::ordered_json;

std::string engine_version();

/// Rationals as "p/q" ("p" for integers); algebraic scalars as
/// {"terms": [{"roots": [primes…], "coeff": "p/q"}]}. Rational inputs may also be
/// plain strings or integers.
Json to_json(const Rational& q);
Json to_json(const AlgebraicScalar& a);
Rational rational_from_json(const Json& j);
AlgebraicScalar scalar_from_json(const Json& j);

/// {"dim", "labels", "brackets": [{"i", "j", "out": {"k": scalar}}]}.
Json to_json(const LieAlgebra& L);
/// Throws Schema on malformed input and JacobiFailure naming the triple.
LieAlgebra algebra_from_json(const Json& j);

Json to_json(const AMatrix& m);
AMatrix matrix_from_json(const Json& j, std::size_t n, const std::string& what);

struct StructureInput {
  HyperParaStructure structure;
  AMatrix metric;
};
/// {"J2", "J3", "metric", optional "J1"}; J₁ = J₃J₂ and an explicit J1 must agree.
StructureInput structure_from_json(const Json& j, std::size_t n);

/// Combined verify input: {"name"?, "algebra": {...}, "structure": {...}, "expected"?: {"hpkt": bool, …}}.
CatalogEntry entry_from_json(const Json& j);

/// Terms in fixed basis order: [{"indices": [...], "coeff": scalar}].
Json form_terms(const KForm& w);
KForm form_from_terms(const Json& j, std::size_t dim, int degree);

/// {"n", "mu": [{"exps": [...], "coeff": "p/q"}]}.
struct PotentialInput {
  std::size_t n = 1;
  Polynomial mu;
};
PotentialInput potential_from_json(const Json& j);
/// Exponent vectors padded to nvars.
Json polynomial_to_json(const Polynomial& p, std::size_t nvars);
Polynomial polynomial_from_json(const Json& j, std::size_t nvars);

/// {"n", "F3": [{"indices": [i, j], "coeff": [{"exps", "coeff"}]}]}.
struct PolyFormInput {
  std::size_t n = 1;
  PolyForm form;
};
PolyFormInput poly_form_from_json(const Json& j, const std::string& field);
Json poly_form_to_json(const PolyForm& w);

/// Primes of every radicand appearing in the algebra or the metric.
std::vector<AlgebraicScalar::Radicand> scalar_tower(const CatalogEntry& e);

struct ReportOptions {
  std::optional<double> timing_ms;  // omitted for reproducible output
};
Json report_json(const CatalogEntry& e, const EntryReport& r, const ReportOptions& opt = {});
std::string report_text(const CatalogEntry& e, const EntryReport& r, const ReportOptions& opt = {});

Json d2_json(const CatalogEntry& e, const DSquareReport& r);
std::string d2_text(const CatalogEntry& e, const DSquareReport& r);

Json potential_report_json(const FlatChart& c, const Polynomial& mu, const PotentialReport& r);
Json float_report_json(const FloatKillingReport& r);

}  // namespace hyperpara
