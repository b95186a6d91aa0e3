#include "hyperpara/algebraic.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "hyperpara/error.hpp"

namespace hyperpara {

namespace {

std::uint64_t to_u64(const mpz_class& z) {
  if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 62)
    throw Error(ErrorCode::NotRepresentable, "radicand out of range: " + z.get_str());
  return static_cast<std::uint64_t>(z.get_ui());
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> square_free_split(std::uint64_t n) {
  if (n == 0) return {0, 0};
  std::uint64_t s = 1;
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) r *= p;
  }
  r *= n;
  return {s, r};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

AlgebraicScalar::AlgebraicScalar(const Rational& q) {
  if (!q.is_zero()) terms_.emplace(1, q);
}

AlgebraicScalar AlgebraicScalar::root_term(const Rational& q, Radicand r) {
  if (r == 0 || q.is_zero()) return {};
  auto [s, sf] = square_free_split(r);
  AlgebraicScalar out;
  out.add_term(sf, q * Rational(static_cast<long>(s)));
  return out;
}

AlgebraicScalar AlgebraicScalar::sqrt(const Rational& q) {
  if (q.sign() < 0) throw Error(ErrorCode::NotRepresentable, "square root of negative rational " + q.str());
  if (q.is_zero()) return {};
  // √(a/b) = √(a·b)/b
  mpz_class prod = q.numerator() * q.denominator();
  return root_term(Rational(mpq_class(1, 1)) / Rational(mpq_class(q.denominator())), to_u64(prod));
}

void AlgebraicScalar::add_term(Radicand r, const Rational& q) {
  if (q.is_zero()) return;
  auto [it, inserted] = terms_.emplace(r, q);
  if (!inserted) {
    it->second += q;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool AlgebraicScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational AlgebraicScalar::rational() const {
  if (!is_rational()) throw Error(ErrorCode::NotRepresentable, "not a rational: " + str());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

double AlgebraicScalar::to_double() const {
  double v = 0;
  for (const auto& [r, q] : terms_) v += q.to_double() * std::sqrt(static_cast<double>(r));
  return v;
}

std::set<AlgebraicScalar::Radicand> AlgebraicScalar::primes() const {
  std::set<Radicand> out;
  for (const auto& [r, q] : terms_)
    for (auto p : prime_factors(r)) out.insert(p);
  return out;
}

AlgebraicScalar AlgebraicScalar::conjugate(Radicand prime) const {
  AlgebraicScalar out = *this;
  for (auto& [r, q] : out.terms_)
    if (r % prime == 0) q = -q;
  return out;
}

int AlgebraicScalar::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational()) return terms_.begin()->second.sign();
  // x = u + v·√p with u, v free of the largest prime p; recurse on u² − p·v².
  Radicand p = *primes().rbegin();
  AlgebraicScalar u;
  AlgebraicScalar v;
  for (const auto& [r, q] : terms_) {
    if (r % p == 0)
      v.add_term(r / p, q);
    else
      u.add_term(r, q);
  }
  int su = u.sign();
  int sv = v.sign();
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  int cmp = (u * u - AlgebraicScalar(Rational(static_cast<long>(p))) * v * v).sign();
  return cmp > 0 ? su : (cmp < 0 ? sv : 0);
}

AlgebraicScalar AlgebraicScalar::operator-() const {
  AlgebraicScalar out = *this;
  for (auto& [r, q] : out.terms_) q = -q;
  return out;
}

AlgebraicScalar& AlgebraicScalar::operator+=(const AlgebraicScalar& o) {
  for (const auto& [r, q] : o.terms_) add_term(r, q);
  return *this;
}

AlgebraicScalar& AlgebraicScalar::operator-=(const AlgebraicScalar& o) {
  for (const auto& [r, q] : o.terms_) add_term(r, -q);
  return *this;
}

AlgebraicScalar operator*(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  AlgebraicScalar out;
  for (const auto& [ra, qa] : a.terms_) {
    for (const auto& [rb, qb] : b.terms_) {
      // √ra·√rb = g·√(ra·rb/g²) for square-free ra, rb with g = gcd.
      std::uint64_t g = std::gcd(ra, rb);
      out.add_term((ra / g) * (rb / g), qa * qb * Rational(static_cast<long>(g)));
    }
  }
  return out;
}

AlgebraicScalar& AlgebraicScalar::operator*=(const AlgebraicScalar& o) { return *this = *this * o; }

AlgebraicScalar AlgebraicScalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero algebraic scalar");
  AlgebraicScalar num(1);
  AlgebraicScalar y = *this;
  while (!y.is_rational()) {
    AlgebraicScalar c = y.conjugate(*y.primes().rbegin());
    num *= c;
    y *= c;
  }
  return num * AlgebraicScalar(y.rational().inverse());
}

AlgebraicScalar& AlgebraicScalar::operator/=(const AlgebraicScalar& o) { return *this = *this * o.inverse(); }

std::string AlgebraicScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, q] : terms_) {
    Rational c = q;
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    if (r == 1) {
      os << c;
    } else {
      if (c == Rational(-1))
        os << "-";
      else if (c != Rational(1))
        os << c << "·";
      os << "√" << r;
    }
    first = false;
  }
  return os.str();
}

AlgebraicScalar tower_normalize(const AlgebraicScalar& x) { return x; }

std::ostream& operator<<(std::ostream& os, const AlgebraicScalar& x) { return os << x.str(); }

}  // namespace hyperpara
