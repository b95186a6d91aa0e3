#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperpara/polynomial.hpp"
#include "hyperpara/projections.hpp"
#include "hyperpara/structures.hpp"

namespace hyperpara {

using QMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Polynomial>;

/// ℝ^{4n} with the standard constant hyper-paracomplex structure. Per 4-block:
/// J₃: e₁→e₂, e₃→e₄; J₂: e₁↔e₃, e₂→−e₄, e₄→−e₂; J₁ = J₃J₂; g₀ = diag(1,1,−1,−1).
class FlatChart {
 public:
  explicit FlatChart(std::size_t n);
  std::size_t n() const { return n_; }
  std::size_t dim() const { return 4 * n_; }
  const std::vector<std::string>& coordinates() const { return coords_; }
  const QMatrix& J(int a) const { return J_[static_cast<std::size_t>(a - 1)]; }
  const QMatrix& g0() const { return g0_; }
  JTriple<Rational> triple() const { return {J_}; }
  HyperParaStructure structure() const;

 private:
  std::size_t n_;
  std::vector<std::string> coords_;
  std::array<QMatrix, 3> J_;
  QMatrix g0_;
};

/// μ₀ = ¼ Σ g₀(e_i,e_i) x_i², the potential of the constant structure.
Polynomial standard_potential(const FlatChart& c);
PolyForm function_form(const FlatChart& c, const Polynomial& f);

/// Coordinate exterior derivative.
PolyForm poly_d(const PolyForm& w);
/// d_a ω = −J_a d J_a ω (a = 1, 2), d₃ω = (−1)^r J₃ d J₃ ω.
PolyForm poly_d_a(const FlatChart& c, int a, const PolyForm& w);

/// α + u·β with u = ε (u² = 1) for a = 1, 2 and u = i (u² = −1) for a = 3.
struct PolyPair {
  PolyForm re, im;
  friend bool operator==(const PolyPair&, const PolyPair&) = default;
};
/// ∂_a = ½(d + u d_a) and ∂̄_a = ½(d − u d_a) acting on pairs.
PolyPair poly_partial_a(const FlatChart& c, int a, const PolyPair& w, bool bar);

struct PotentialForms {
  std::array<PolyForm, 3> F;
};
/// F₁ = ½(dd₁ − d₂d₃)μ, F₂ = ½(dd₂ − d₃d₁)μ, F₃ = −½(dd₃ + d₁d₂)μ.
PotentialForms forms_from_potential(const FlatChart& c, const Polynomial& mu);

/// g(X,Y) = F₁(X,J₁Y), F₂(X,J₂Y) or −F₃(X,J₃Y).
PolyMatrix metric_from_potential_form(const FlatChart& c, const PolyForm& F, int which);
/// ½(H − J₁ᵀHJ₁ − J₂ᵀHJ₂ + J₃ᵀHJ₃) with H the coordinate Hessian of μ.
PolyMatrix hessian_metric(const FlatChart& c, const Polynomial& mu);

struct PotentialReport {
  PotentialForms forms;
  std::array<PolyMatrix, 3> metric_from_form;
  PolyMatrix metric_hessian;
  bool metrics_agree = false;  // all four metrics equal and symmetric
  PolyForm torsion;            // −½ d₁d₂d₃μ
  std::array<PolyForm, 3> daFa;
  bool hpkt = false;              // d₁F₁ = d₂F₂ = d₃F₃
  bool torsion_matches = false;   // T = d_aF_a
  std::array<bool, 3> real_pairs{};  // F₂−εF₃, F₃+εF₁, F₁−iF₂ against −2∂_aJ_b∂̄_aμ
  bool operator_links = false;    // inner links of each row of the chain
  bool anticommute = false;       // d_ad_b = −d_bd_a on μ
  bool hyper_para_kaehler = false;  // dd₃μ = d₁d₂μ only; the full chain also needs the cyclic pair
  bool full_chain = false;          // links through −J₁F₃ = dd₃μ etc.
};
PotentialReport potential_equivalences(const FlatChart& c, const Polynomial& mu);

/// D = η∘d on polynomial forms (η the A^{k+1} projection of the constant structure).
PolyForm poly_D(const FlatChart& c, const PolyForm& w);

struct SolveOptions {
  int d_max = 6;  // degree budget for μ
};
/// Exact μ with forms_from_potential(μ).F₃ = F3. Throws NotType11, NotDClosed or
/// NoPolynomialSolution.
Polynomial solve_potential(const FlatChart& c, const PolyForm& F3, const SolveOptions& opt = {});

struct Dim4Report {
  std::array<PolyForm, 3> daFa;  // for g = p·g₀
  bool hpkt = false;
  /// 2p − □₀μ with □₀ = Σ g₀^{ii}∂_i²: zero iff μ is a potential of p·g₀ (trace of the Hessian metric).
  Polynomial residual;
  /// p²·(△μ − dμ(θ♯) + 2) with △ = −tr_g∇^g d, θ = d log p: 2p² − p□₀μ − 2g₀(dp,dμ).
  Polynomial residual_lee;
};
/// Requires n = 1; p need only be nonzero at the origin.
Dim4Report dim4_checks(const FlatChart& c, const Polynomial& p, const Polynomial& mu);

}  // namespace hyperpara
