#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperpara/composite.hpp"
#include "hyperpara/matrix.hpp"

namespace hyperpara {

using Vec = std::vector<AlgebraicScalar>;
using SparseVec = std::vector<std::pair<std::size_t, AlgebraicScalar>>;

/// Finite-dimensional real Lie algebra given by structure constants
/// [e_i, e_j] = Σ_k c^k_{ij} e_k.
class LieAlgebra {
 public:
  struct Bracket {
    std::size_t i;
    std::size_t j;
    SparseVec out;  // [e_i, e_j], i < j
  };

  LieAlgebra() = default;
  /// Validates index ranges and the Jacobi identity (throws JacobiFailure).
  LieAlgebra(std::vector<std::string> labels, const std::vector<Bracket>& brackets);
  /// Same, but a Jacobi failure is tolerated; used for deliberately broken controls.
  static LieAlgebra unchecked(std::vector<std::string> labels, const std::vector<Bracket>& brackets);
  static LieAlgebra abelian(std::size_t dim);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// [e_i, e_j] as a sparse vector.
  const SparseVec& structure(std::size_t i, std::size_t j) const { return c_[i * dim() + j]; }
  AlgebraicScalar c(std::size_t k, std::size_t i, std::size_t j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  /// First basis triple violating Jacobi, if any.
  std::optional<std::array<std::size_t, 3>> jacobi_violation() const;
  std::vector<Bracket> brackets() const;
  bool is_abelian() const;

 private:
  void set(std::size_t i, std::size_t j, const SparseVec& v);
  std::vector<std::string> labels_;
  std::vector<SparseVec> c_;
};

Vec basis_vector(std::size_t dim, std::size_t i);

/// Matrices over ℂ (entries in the quadratic tower) spanning a real Lie algebra.
struct MatrixBasis {
  std::vector<std::string> labels;
  std::vector<Matrix<ComplexScalar>> mats;
};

/// Exact structure constants of the real span of b. Throws DependentBasis or
/// NotClosedUnderBracket (naming the offending pair).
LieAlgebra from_matrix_basis(const MatrixBasis& b);

/// Gram matrix of B(X,Y) = ½ tr(XY); throws NonRealTrace.
AMatrix trace_form(const MatrixBasis& b);

/// g([x,y],z) + g(y,[x,z]) = 0 on all basis triples.
bool check_biinvariant(const LieAlgebra& L, const AMatrix& g);

/// Elementary matrix E^j_k (1-based, row j column k) of size n.
Matrix<ComplexScalar> elementary(std::size_t n, std::size_t j, std::size_t k);

}  // namespace hyperpara
