#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperpara/forms.hpp"
#include "hyperpara/liealg.hpp"

namespace hyperpara {

/// Ordered triple (J₁, J₂, J₃) of endomorphisms of the frame. The
/// paraquaternionic identities are tested, never assumed.
struct HyperParaStructure {
  AMatrix J1, J2, J3;

  /// J₁ = J₃·J₂.
  static HyperParaStructure from_J2_J3(const AMatrix& J2, const AMatrix& J3);
  std::size_t dim() const { return J1.rows(); }
  const AMatrix& J(int a) const;
  /// J_a² as the scalar ±1 it should be: +1 for a = 1, 2 and −1 for a = 3.
  static int square_sign(int a) { return a == 3 ? -1 : 1; }
};

struct ParaquaternionicReport {
  bool ok = true;
  std::vector<std::string> defects;
};
ParaquaternionicReport check_paraquaternionic(const HyperParaStructure& S);

/// N(X,Y) on frame pairs i < j; only nonzero values are stored.
struct NijenhuisTensor {
  std::size_t dim = 0;
  std::vector<std::pair<std::array<std::size_t, 2>, Vec>> nonzero;
  bool vanishes() const { return nonzero.empty(); }
};
NijenhuisTensor nijenhuis(const LieAlgebra& L, const AMatrix& J);

struct HyperboloidPoint {
  enum class Sheet { Complex, Para };
  AlgebraicScalar c1, c2, c3;
  Sheet sheet;
  /// Checks c₁² + c₂² − c₃² = −1 (complex) or +1 (para).
  bool on_quadric() const;
  AMatrix combine(const HyperParaStructure& S) const;
  std::string str() const;
};
/// (5/4,0,3/4), (0,5/4,3/4) on the para sheet; (0,3/4,5/4), (3/4,0,5/4) on the complex sheet.
std::vector<HyperboloidPoint> default_hyperboloid_samples();

struct IntegrabilityReport {
  std::array<bool, 3> vanishes{};  // N₁, N₂, N₃
  std::vector<std::pair<HyperboloidPoint, bool>> samples;
  bool integrable() const { return vanishes[0] && vanishes[1] && vanishes[2]; }
};
IntegrabilityReport check_integrable(const LieAlgebra& L, const HyperParaStructure& S,
                                     const std::vector<HyperboloidPoint>& samples = default_hyperboloid_samples());

enum class AbelianKind { Para, Complex };
/// Para: [J·,J·] = −[·,·]. Complex: [J·,J·] = [·,·].
bool check_abelian(const LieAlgebra& L, const AMatrix& J, AbelianKind kind);

/// g(J₁·,J₁·) = g(J₂·,J₂·) = −g(J₃·,J₃·) = −g. Returns the first failing axis (1..3), 0 for
/// a non-symmetric or degenerate g, nullopt when compatible.
std::optional<int> compatibility_defect(const HyperParaStructure& S, const AMatrix& g);
bool compatible_metric(const HyperParaStructure& S, const AMatrix& g);
/// Throws IncompatibleMetric naming the axis.
void require_compatible(const HyperParaStructure& S, const AMatrix& g);

/// F_a(X,Y) = g(X, J_a Y).
KForm kaehler_form(const AMatrix& g, const AMatrix& J);
std::array<KForm, 3> kaehler_forms(const HyperParaStructure& S, const AMatrix& g);

/// Mutually g-orthogonal frame with nonzero norms; normalized when every norm
/// is a rational whose absolute value is a square in the tower (adjoins roots).
struct OrthogonalFrame {
  std::vector<Vec> vectors;
  std::vector<AlgebraicScalar> norms;  // g(f_i, f_i)
};
OrthogonalFrame orthogonal_frame(const AMatrix& g);
OrthogonalFrame pseudo_orthonormal_frame(const AMatrix& g);

/// ∇_{e_i} e_j = Σ_k Λ^k_{ij} e_k.
struct InvariantConnection {
  enum class Kind { LeviCivita, Hpkt, LeftFlat, ComplexProduct };
  Kind kind = Kind::LeftFlat;
  std::vector<AMatrix> lambda;  // lambda[i](k, j) = Λ^k_{ij}

  std::size_t dim() const { return lambda.size(); }
  Vec apply(const Vec& x, const Vec& y) const;
  bool is_zero() const;
  /// T(e_i,e_j) = Λ_ij − Λ_ji − [e_i,e_j], stored as vectors for i < j.
  std::vector<Vec> torsion(const LieAlgebra& L) const;
  bool torsion_free(const LieAlgebra& L) const;
  bool preserves_metric(const AMatrix& g) const;
  bool preserves(const AMatrix& J) const;
};
std::string kind_name(InvariantConnection::Kind k);

InvariantConnection levi_civita(const LieAlgebra& L, const AMatrix& g);
/// ∇ = ∇^{LC} + ½ g⁻¹T. Throws NoSolution if the result fails ∇g = ∇J_a = 0 or
/// does not have torsion T.
InvariantConnection hpkt_connection(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g,
                                    const KForm& T);
/// Unique torsion-free connection with ∇J_a = 0. Throws NoSolution / NonUnique.
InvariantConnection complex_product(const LieAlgebra& L, const HyperParaStructure& S);

/// Torsion 3-form of a connection, lowered with g: T(x,y,z) = g(T(x,y), z).
/// Throws NotRepresentable if it is not totally skew.
KForm lowered_torsion(const InvariantConnection& C, const LieAlgebra& L, const AMatrix& g);

/// R(e_i,e_j) as endomorphisms, indexed [i * dim + j].
struct Curvature {
  std::size_t dim = 0;
  std::vector<AMatrix> R;
  const AMatrix& at(std::size_t i, std::size_t j) const { return R[i * dim + j]; }
  bool is_zero() const;
};
Curvature curvature(const InvariantConnection& C, const LieAlgebra& L);
/// Ric(y,z) = tr(x ↦ R(x,y)z).
AMatrix ricci(const Curvature& R);
/// ρ_a(X,Y) = ½ Σ_i ε_i g(R(X,Y)f_i, J_a f_i) over a pseudo-orthonormal frame,
/// evaluated basis-free as ½ tr(g⁻¹ J_aᵀ g R(X,Y)).
KForm ricci_two_form(const Curvature& R, const AMatrix& g, const AMatrix& J);
/// The constant c with Ric = c·B, if one exists.
std::optional<AlgebraicScalar> einstein_constant(const AMatrix& ric, const AMatrix& B);

/// Codifferential δF(X) = −Σ_i ε_i (∇^{LC}_{f_i}F)(f_i, X).
KForm codifferential(const LieAlgebra& L, const AMatrix& g, const KForm& F);

struct LeeForm {
  KForm theta;        // −δF_a ∘ J_a³
  KForm theta_trace;  // Σ_i ε_i dF_a(f_i, J_a f_i, J_a² X)
  std::string relation;  // "equal", "proportional c", or "unrelated"
};
LeeForm lee_form(const LieAlgebra& L, const HyperParaStructure& S, const AMatrix& g, int a);

}  // namespace hyperpara
