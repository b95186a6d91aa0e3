#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hyperpara/rational.hpp"

namespace hyperpara {

/// Multivariate polynomial over ℚ in variables x₀, x₁, ….
///
/// Exponent vectors are stored with trailing zeros trimmed, so the number of
/// variables is not part of the value and constants mix freely with
/// polynomials of any arity.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint16_t>;
  using Terms = std::map<Exponents, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Polynomial monomial(Exponents exps, const Rational& coeff);
  static Polynomial variable(std::size_t i);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Total degree; −1 for the zero polynomial.
  int degree() const;
  /// Number of variables actually used (one past the highest index present).
  std::size_t arity() const;

  Polynomial partial(std::size_t i) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Homogeneous component of total degree k.
  Polynomial homogeneous_part(int k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& r);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& r) { return a *= r; }
  friend Polynomial operator*(const Rational& r, Polynomial a) { return a *= r; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// e.g. "3*x1^2*x3 - 1/2"; variables are printed 1-based.
  std::string str() const;

 private:
  void add_term(Exponents e, const Rational& c);
  Terms terms_;
};

/// All exponent vectors in `nvars` variables of total degree exactly k,
/// in lexicographic order.
std::vector<Polynomial::Exponents> monomials_of_degree(std::size_t nvars, int k);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace hyperpara
