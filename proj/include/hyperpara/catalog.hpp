#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperpara/hpkt.hpp"

namespace hyperpara {

/// Where an expected value comes from; Input marks values supplied in a verify file.
enum class Source { Paper, Derived, Input };
std::string source_name(Source s);

template <class T>
struct Expect {
  T value;
  Source source;
};

struct ExpectedVerdict {
  std::optional<Expect<bool>> integrable, hpkt, strong, flat, einstein;
  std::optional<Expect<std::array<bool, 3>>> abelian;  // J₁, J₂ para; J₃ complex
  std::optional<Expect<KForm>> torsion, d_torsion;
};

struct CatalogEntry {
  std::string key;
  LieAlgebra algebra;
  HyperParaStructure structure;
  AMatrix metric;
  ExpectedVerdict expected;
  std::optional<AMatrix> trace_form;  // B = ½ tr(XY) for matrix-realized algebras
  bool perturbed = false;
  /// Construction checks that failed on a perturbed entry.
  std::vector<std::string> defects;
  std::size_t dim() const { return algebra.dim(); }
};

struct CatalogKey {
  std::string name;
  int param = 0;  // m or n; 0 when the entry has no parameter
  std::string canonical() const;
};

/// Accepts "name", "name:n" and "name(n)"; the parameter defaults to 2 for m and 1 for n.
CatalogKey parse_key(const std::string& key);
/// Every entry family with its parameter letter ('m', 'n' or 0).
std::vector<std::pair<std::string, char>> families();
/// The default instantiations in report order.
std::vector<std::string> catalog_keys();

/// Builds an entry; keys of the form "perturbed:BASE:SPEC" go through perturb.
/// Throws UnknownKey or UnsupportedParameter.
CatalogEntry build(const std::string& key);

/// Negative controls. SPEC is one of
///   J3flip            negate the first nonzero entry of column 0 of J₃, J₁ = J₃J₂
///   J3block:i         J₃ ↦ −J₃ on the J-orbit of e_i, J₁ = J₃J₂
///   shear:i,j         conjugate everything by 1 + E_ij
///   scaleblock:i,f    scale g by f on the J-orbit of e_i (stays compatible)
///   zerobracket:i,j   drop [e_i, e_j] (Jacobi may fail)
CatalogEntry perturb(const CatalogEntry& e, const std::string& spec);

struct EntryReport {
  std::string key;
  ParaquaternionicReport paraquaternionic;
  IntegrabilityReport integrability;
  bool compatible = false;
  std::array<bool, 3> abelian{};
  std::optional<DSquareReport> d2;
  std::optional<HpktVerdict> verdict;   // absent unless paraquaternionic and compatible
  std::optional<bool> flat;             // HPKT connection vanishes
  std::optional<AlgebraicScalar> einstein;  // Ric = c·B
  std::vector<std::string> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// Runs every check and compares against the entry's expected fragment.
EntryReport verify_entry(const CatalogEntry& e, bool with_d2 = true);

}  // namespace hyperpara
