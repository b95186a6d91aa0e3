#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperpara/projections.hpp"
#include "hyperpara/structures.hpp"

namespace hyperpara {

JTriple<AlgebraicScalar> triple(const HyperParaStructure& S);

/// d_a ω = −J_a d J_a ω for a = 1, 2 and d₃ω = (−1)^r J₃ d J₃ ω.
KForm d_a(const LieAlgebra& L, const HyperParaStructure& S, int a, const KForm& w);

/// Real-pair form of the three holomorphic conditions:
/// (b) dF₂ − d₁F₃ = 0, d₁F₂ − dF₃ = 0;
/// (c) dF₃ + d₂F₁ = 0, dF₁ + d₂F₃ = 0;
/// (d) dF₁ + d₃F₂ = 0, d₃F₁ − dF₂ = 0.
struct HolomorphicFlags {
  bool b = false, c = false, d = false;
};

/// D² on frame 1-forms f·e^i with f an arbitrary function. D² is second order, so at a
/// point D²(f e^i) is a combination of f, of e_l f and of the symmetrized e_k e_j f, and
/// vanishes for every f iff each coefficient does.
struct DSquareReport {
  enum class Order { Value, FirstDerivative, Symbol };
  bool nilpotent = true;
  std::optional<std::size_t> witness;  // i of the frame 1-form e^i
  Order order = Order::Value;          // which coefficient of D²(f e^i) is nonzero
  std::vector<std::size_t> direction;  // l for e_l f; (j, k) for the symbol
  KForm witness_value;
};
std::string order_name(DSquareReport::Order o);

struct HpktVerdict {
  bool is_hpkt = false;
  std::array<KForm, 3> kaehler;
  std::array<KForm, 3> daFa;
  KForm torsion;    // d₁F₁ when is_hpkt
  KForm d_torsion;  // d T
  bool is_strong = false;
  std::array<LeeForm, 3> lee;
  bool lee_equal = false;
  HolomorphicFlags holomorphic;
  bool characterizations_agree = false;
  DSquareReport d2;
};

/// Full verification. Throws IncompatibleMetric when (g, S) is not hyper-parahermitian.
HpktVerdict check_hpkt(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g, bool with_d2 = true);

HolomorphicFlags holomorphic_characterization(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g);

struct DaFbTable {
  std::array<std::array<KForm, 3>, 3> entry;  // entry[a-1][b-1] = d_a F_b
  bool diagonal_equal = false;
  /// Per off-diagonal (a,b): +1 if d_aF_b = ε_abc dF_c, −1 if = −ε_abc dF_c, 0 otherwise.
  std::array<std::array<int, 3>, 3> pattern{};
  /// "−ε_abc dF_c", "+ε_abc dF_c" or "mixed".
  std::string summary;
};
DaFbTable d_aF_b_table(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g);

/// Candidate metric from a single Kähler form: which = 1: F₁(X,J₁Y); 2: F₂(X,J₂Y);
/// 3: −F₃(X,J₃Y). Throws NotSymmetric, Degenerate, WrongSignature or WrongType.
AMatrix metric_from_form(const HyperParaStructure& S, const KForm& F, int which);

/// D = η∘d with η the projection onto A^{k+1}.
KForm D(const LieAlgebra& L, const HyperParaStructure& S, const KForm& w);
DSquareReport check_d_squared(const LieAlgebra& L, const HyperParaStructure& S);

/// The explicit 1-form formula (dω)^{2,0}+(dω)^{0,2}+½((dω)^{1,1}+J₂(dω)^{1,1}), J₃-types.
KForm D_one_form_explicit(const LieAlgebra& L, const HyperParaStructure& S, const KForm& w);

/// Projection onto A³ built from the quadric-reduced coefficient operators
/// (B³ = common kernel, A³ = span of images); an independent check of project_A.
KForm project_A3_by_quadric(const HyperParaStructure& S, const KForm& w);

struct DClosedReport {
  bool d_closed = false;
  std::optional<bool> induced_hpkt;  // when −F(·,J₃·) is nondegenerate
};
/// F must satisfy F = F(J₃·,J₃·) = F(J₁·,J₁·) (throws NotType11).
DClosedReport check_D_closed_hpkt(const LieAlgebra& L, const HyperParaStructure& S, const KForm& F);

}  // namespace hyperpara
