#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hyperpara/rational.hpp"

namespace hyperpara {

/// Element of ℚ(√p₁,…,√p_t): a finite sum Σ q_r·√r over square-free radicands r.
///
/// The radicands √r for distinct square-free r are linearly independent over ℚ,
/// so the stored map is a canonical form: structural equality is value
/// equality and zero is the empty map. Radicand 1 carries the rational part.
class AlgebraicScalar {
 public:
  using Radicand = std::uint64_t;
  using Terms = std::map<Radicand, Rational>;

  AlgebraicScalar() = default;
  AlgebraicScalar(const Rational& q);  // NOLINT(google-explicit-constructor)
  AlgebraicScalar(long v) : AlgebraicScalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  AlgebraicScalar(int v) : AlgebraicScalar(Rational(v)) {}   // NOLINT(google-explicit-constructor)

  /// Positive square root of a non-negative rational.
  static AlgebraicScalar sqrt(const Rational& q);
  /// q·√r for square-free or arbitrary positive r (reduced automatically).
  static AlgebraicScalar root_term(const Rational& q, Radicand r);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Throws NotRepresentable unless is_rational().
  Rational rational() const;
  /// Exact sign (-1, 0, +1) of the real number represented.
  int sign() const;
  double to_double() const;

  /// Primes dividing some radicand, ascending.
  std::set<Radicand> primes() const;
  /// Galois conjugate sending √p ↦ −√p.
  AlgebraicScalar conjugate(Radicand prime) const;

  AlgebraicScalar operator-() const;
  AlgebraicScalar& operator+=(const AlgebraicScalar& o);
  AlgebraicScalar& operator-=(const AlgebraicScalar& o);
  AlgebraicScalar& operator*=(const AlgebraicScalar& o);
  AlgebraicScalar& operator/=(const AlgebraicScalar& o);
  AlgebraicScalar inverse() const;

  friend AlgebraicScalar operator+(AlgebraicScalar a, const AlgebraicScalar& b) { return a += b; }
  friend AlgebraicScalar operator-(AlgebraicScalar a, const AlgebraicScalar& b) { return a -= b; }
  friend AlgebraicScalar operator*(const AlgebraicScalar& a, const AlgebraicScalar& b);
  friend AlgebraicScalar operator/(AlgebraicScalar a, const AlgebraicScalar& b) { return a /= b; }
  friend bool operator==(const AlgebraicScalar& a, const AlgebraicScalar& b) = default;

  /// Human-readable, e.g. "1/3·√3 + 2".
  std::string str() const;

 private:
  void add_term(Radicand r, const Rational& q);
  Terms terms_;
};

/// Canonical representative. The representation is canonical already; kept
/// as an explicit operation so callers can state intent.
AlgebraicScalar tower_normalize(const AlgebraicScalar& x);

/// Square-free decomposition n = s²·r, returns {s, r}.
std::pair<std::uint64_t, std::uint64_t> square_free_split(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::ostream& operator<<(std::ostream& os, const AlgebraicScalar& x);

}  // namespace hyperpara
