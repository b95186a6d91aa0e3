#include "hyperpara/rational.hpp"

#include "hyperpara/error.hpp"

namespace hyperpara {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::Schema, "empty rational literal");
  // Accept a leading unicode minus as produced by pretty printers.
  if (s.rfind("\xE2\x88\x92", 0) == 0) s = "-" + s.substr(3);
  if (s.front() == '+') s.erase(0, 1);
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw Error(ErrorCode::Schema, "bad rational literal '" + std::string(text) + "'");
  if (v.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  v.canonicalize();
  return Rational(std::move(v));
}

std::string Rational::str() const { return v_.get_str(10); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const { return Rational(1) / *this; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hyperpara
