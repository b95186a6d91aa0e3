#pragma once

#include <string>

#include "hyperpara/algebraic.hpp"
#include "hyperpara/error.hpp"

namespace hyperpara {

/// re + i·im with i² = −1.
struct ComplexScalar {
  AlgebraicScalar re;
  AlgebraicScalar im;

  ComplexScalar() = default;
  ComplexScalar(AlgebraicScalar r, AlgebraicScalar i = {}) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  ComplexScalar(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  static ComplexScalar i_unit() { return {AlgebraicScalar(0), AlgebraicScalar(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ComplexScalar conj() const { return {re, -im}; }
  AlgebraicScalar norm2() const { return re * re + im * im; }
  ComplexScalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero complex scalar");
    AlgebraicScalar n = norm2().inverse();
    return {re * n, -im * n};
  }

  ComplexScalar operator-() const { return {-re, -im}; }
  friend ComplexScalar operator+(const ComplexScalar& a, const ComplexScalar& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexScalar operator-(const ComplexScalar& a, const ComplexScalar& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexScalar operator*(const ComplexScalar& a, const ComplexScalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexScalar operator/(const ComplexScalar& a, const ComplexScalar& b) { return a * b.inverse(); }
  ComplexScalar& operator+=(const ComplexScalar& o) { return *this = *this + o; }
  ComplexScalar& operator-=(const ComplexScalar& o) { return *this = *this - o; }
  ComplexScalar& operator*=(const ComplexScalar& o) { return *this = *this * o; }
  friend bool operator==(const ComplexScalar&, const ComplexScalar&) = default;

  std::string str() const { return "(" + re.str() + ") + i(" + im.str() + ")"; }
};

/// re + ε·eps with ε² = +1. Not a field: re = ±eps are zero divisors.
struct SplitScalar {
  AlgebraicScalar re;
  AlgebraicScalar eps;

  SplitScalar() = default;
  SplitScalar(AlgebraicScalar r, AlgebraicScalar e = {}) : re(std::move(r)), eps(std::move(e)) {}  // NOLINT
  SplitScalar(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  static SplitScalar eps_unit() { return {AlgebraicScalar(0), AlgebraicScalar(1)}; }

  bool is_zero() const { return re.is_zero() && eps.is_zero(); }
  SplitScalar conj() const { return {re, -eps}; }
  /// re² − eps²; vanishes exactly on zero divisors.
  AlgebraicScalar norm() const { return re * re - eps * eps; }
  bool is_zero_divisor() const { return norm().is_zero(); }
  SplitScalar inverse() const {
    if (is_zero_divisor()) throw Error(ErrorCode::DivisionByZero, "split scalar " + str() + " is a zero divisor");
    AlgebraicScalar n = norm().inverse();
    return {re * n, -eps * n};
  }

  SplitScalar operator-() const { return {-re, -eps}; }
  friend SplitScalar operator+(const SplitScalar& a, const SplitScalar& b) { return {a.re + b.re, a.eps + b.eps}; }
  friend SplitScalar operator-(const SplitScalar& a, const SplitScalar& b) { return {a.re - b.re, a.eps - b.eps}; }
  friend SplitScalar operator*(const SplitScalar& a, const SplitScalar& b) {
    return {a.re * b.re + a.eps * b.eps, a.re * b.eps + a.eps * b.re};
  }
  friend SplitScalar operator/(const SplitScalar& a, const SplitScalar& b) { return a * b.inverse(); }
  friend bool operator==(const SplitScalar&, const SplitScalar&) = default;

  std::string str() const { return "(" + re.str() + ") + ε(" + eps.str() + ")"; }
};

}  // namespace hyperpara
