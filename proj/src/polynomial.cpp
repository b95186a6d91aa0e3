#include "hyperpara/polynomial.hpp"

#include <sstream>

namespace hyperpara {

namespace {

void trim(Polynomial::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& coeff) {
  Polynomial p;
  trim(exps);
  p.add_term(std::move(exps), coeff);
  return p;
}

Polynomial Polynomial::variable(std::size_t i) {
  Exponents e(i + 1, 0);
  e[i] = 1;
  return monomial(std::move(e), Rational(1));
}

void Polynomial::add_term(Exponents e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(std::move(e), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

std::size_t Polynomial::arity() const {
  std::size_t a = 0;
  for (const auto& [e, c] : terms_) a = std::max(a, e.size());
  return a;
}

Polynomial Polynomial::partial(std::size_t i) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (i >= e.size() || e[i] == 0) continue;
    Exponents f = e;
    --f[i];
    trim(f);
    out.add_term(std::move(f), c * Rational(static_cast<long>(e[i])));
  }
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= (i < point.size() ? point[i] : Rational(0));
    }
    total += t;
  }
  return total;
}

Polynomial Polynomial::homogeneous_part(int k) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    if (s == k) out.terms_.emplace(e, c);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& r) {
  if (r.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= r;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  // Constant fast path; the flat-model J actions multiply by constants constantly.
  if (b.is_constant()) return a * b.constant_term();
  if (a.is_constant()) return b * a.constant_term();
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c0] = *it;
    Rational c = c0;
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (has_var) vars << "*";
      vars << "x" << (i + 1);
      if (e[i] > 1) vars << "^" << e[i];
      has_var = true;
    }
    if (!has_var) {
      os << c;
    } else if (c == Rational(1)) {
      os << vars.str();
    } else if (c == Rational(-1)) {
      os << "-" << vars.str();
    } else {
      os << c << "*" << vars.str();
    }
  }
  return os.str();
}

std::vector<Polynomial::Exponents> monomials_of_degree(std::size_t nvars, int k) {
  std::vector<Polynomial::Exponents> out;
  Polynomial::Exponents cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      cur[i] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = static_cast<std::uint16_t>(v);
      self(self, i + 1, left - v);
    }
  };
  if (nvars == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, k);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace hyperpara
