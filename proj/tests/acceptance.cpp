// One line per acceptance criterion: "PASS|FAIL  C<n>  <summary>". With --criterion N
// only that criterion runs; the exit status is 0 iff every criterion run passed.

#include <chrono>
#include <functional>
#include <tuple>
#include <iostream>
#include <random>
#include <sstream>

#include "hyperpara/catalog.hpp"
#include "hyperpara/flatmodel.hpp"
#include "hyperpara/hpkt.hpp"
#include "hyperpara/linalg.hpp"

using namespace hyperpara;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string str(const CatalogEntry& e, const KForm& w) { return form_str(w, e.algebra.labels()); }

KForm uvst(const CatalogEntry& e) {
  KForm w = KForm::basis(e.dim(), 4);
  for (std::size_t i = 5; i < 8; ++i) w = wedge(w, KForm::basis(e.dim(), i));
  return w;
}

Outcome c1() {
  Outcome o;
  auto e = build("su21_met2");
  auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
  o.require(v.is_hpkt, "not HPKT");
  o.require(v.torsion == e.expected.torsion->value, "torsion " + str(e, v.torsion));
  o.require(str(e, v.torsion) == "2 X∧Y∧W − X∧U∧V + X∧S∧T + Y∧U∧S − Y∧V∧T + W∧U∧T + W∧V∧S − Z∧U∧V − Z∧S∧T",
            "torsion string differs");
  o.require(v.d_torsion == uvst(e).scaled(AlgebraicScalar(-4)), "dT = " + str(e, v.d_torsion));
  o.require(!v.is_strong, "strong");
  return o;
}

Outcome c2() {
  Outcome o;
  auto e = build("sl_odd_met1:2");
  auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
  o.require(v.daFa[0] == v.daFa[1] && v.daFa[1] == v.daFa[2], "d_aF_a differ");
  o.require(v.d_torsion == uvst(e).scaled(AlgebraicScalar(-8)), "dT = " + str(e, v.d_torsion));
  o.require(!v.is_strong, "strong");
  return o;
}

Outcome c3() {
  Outcome o;
  auto e = build("two_r_sl2c");
  auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
  o.require(v.is_hpkt, "d1F1 = d2F2 = d3F3 fails");
  o.require(v.torsion == e.expected.torsion->value,
            "torsion " + str(e, v.torsion) + " vs S∧dS − Y∧dY = " + str(e, e.expected.torsion->value));
  o.require(v.d_torsion.is_zero(), "dT = " + str(e, v.d_torsion));
  o.require(v.is_strong, "not strong");
  return o;
}

Outcome c4() {
  Outcome o;
  auto e = build("su_mm1_killing:2");
  auto r = verify_entry(e, false);
  bool tower = false;
  for (const auto& b : e.algebra.brackets())
    for (const auto& [k, c] : b.out) tower = tower || c.primes().count(3);
  o.require(tower, "basis not over Q(√3)");
  o.require(compatible_metric(e.structure, e.metric), "compatibility fails");
  o.require(r.verdict && r.verdict->is_hpkt, "not HPKT");
  if (r.verdict) {
    o.require(r.verdict->torsion == e.expected.torsion->value, "torsion != −B([,],)");
    o.require(r.verdict->d_torsion.is_zero(), "dT != 0");
  }
  o.require(r.flat && *r.flat, "HPKT connection not flat");
  // oracle: Ric = −¼ Killing = −(2m−1)·B
  o.require(r.einstein && *r.einstein == AlgebraicScalar(-3), "Ric != −3 B");
  return o;
}

Outcome c5() {
  Outcome o;
  for (const char* k : {"heis_r3:1", "heis_r3:2"}) {
    auto e = build(k);
    std::string K(k);
    o.require(check_abelian(e.algebra, e.structure.J1, AbelianKind::Para), K + " J1 not Abelian");
    o.require(check_abelian(e.algebra, e.structure.J2, AbelianKind::Para), K + " J2 not Abelian");
    o.require(check_abelian(e.algebra, e.structure.J3, AbelianKind::Complex), K + " J3 not Abelian");
    o.require(check_integrable(e.algebra, e.structure).integrable(), K + " not integrable");
    o.require(check_hpkt(e.algebra, e.structure, e.metric, false).is_hpkt, K + " not HPKT");
  }
  return o;
}

Outcome c6() {
  Outcome o;
  auto e = build("heis_sl2r:1");
  auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
  o.require(v.torsion == e.expected.torsion->value,
            "torsion " + str(e, v.torsion) + " vs dZ∧Z = " + str(e, e.expected.torsion->value));
  o.require(v.d_torsion == e.expected.d_torsion->value, "dT != dZ∧dZ");
  o.require(!v.d_torsion.is_zero(), "dT = 0");
  return o;
}

std::vector<std::string> integrable_controls() {
  return {"perturbed:su21_met2:scaleblock:0,2",  "perturbed:heis_r3:1:scaleblock:0,3",
          "perturbed:sl_odd_met1:2:scaleblock:4,2", "perturbed:heis_r3:1:J3block:0",
          "perturbed:heis_sl2r:1:scaleblock:0,3",  "perturbed:su_mm1_killing:2:scaleblock:4,2"};
}

Outcome c7() {
  Outcome o;
  std::size_t pos = 0, neg = 0;
  std::vector<std::string> ints = catalog_keys();
  for (const auto& k : integrable_controls()) ints.push_back(k);
  for (const auto& k : ints) {
    auto e = build(k);
    if (!check_integrable(e.algebra, e.structure, {}).integrable()) continue;
    ++pos;
    o.require(check_d_squared(e.algebra, e.structure).nilpotent, "D² != 0 on integrable " + k);
  }
  std::vector<std::string> broken;
  for (const auto& k : catalog_keys()) broken.push_back("perturbed:" + k + ":J3flip");
  for (const char* base : {"heis_r3:1", "su21_met2"})
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        if (i == j) continue;
        std::string k = "perturbed:" + std::string(base) + ":shear:" + std::to_string(i) + "," + std::to_string(j);
        auto e = build(k);
        if (!check_integrable(e.algebra, e.structure, {}).integrable()) broken.push_back(k);
      }
  for (const auto& k : broken) {
    auto e = build(k);
    ++neg;
    o.require(!check_d_squared(e.algebra, e.structure).nilpotent, "no D² witness for " + k);
  }
  o.detail = std::to_string(pos) + " integrable, " + std::to_string(neg) + " non-integrable controls" +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

Outcome c8() {
  Outcome o;
  std::size_t controls = 0, non_hpkt = 0;
  auto agree = [&](const std::string& k, bool control) {
    auto e = build(k);
    if (!check_paraquaternionic(e.structure).ok || !compatible_metric(e.structure, e.metric) ||
        !check_integrable(e.algebra, e.structure, {}).integrable())
      return;
    auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
    if (control) {
      ++controls;
      non_hpkt += !v.is_hpkt;
    }
    o.require(v.characterizations_agree, "characterizations disagree on " + k);
  };
  for (const auto& k : catalog_keys()) agree(k, false);
  for (const auto& k : integrable_controls()) agree(k, true);
  o.require(controls >= 5, "only " + std::to_string(controls) + " usable controls");
  o.require(non_hpkt >= 1, "no non-HPKT control");
  o.detail = std::to_string(controls) + " controls (" + std::to_string(non_hpkt) + " non-HPKT)" +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

Outcome c9() {
  Outcome o;
  for (const auto& k : catalog_keys()) {
    auto e = build(k);
    auto T = triple(e.structure);
    std::size_t n = e.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        KForm w = KForm::monomial(n, {i, j});
        KForm d = dagger(T, w);
        bool ok = dagger(T, d) == d.scaled(AlgebraicScalar(2)) + w.scaled(AlgebraicScalar(3));
        KForm a = project_A2(T, w), b = project_B2(T, w);
        ok = ok && a + b == w && project_A2(T, a) == a && project_B2(T, b) == b && project_A2(T, b).is_zero();
        ok = ok && dagger(T, a) == -a && dagger(T, b) == b.scaled(AlgebraicScalar(3));
        if (!ok) {
          o.require(false, k + " fails on e^" + std::to_string(i) + "∧e^" + std::to_string(j));
          return o;
        }
      }
  }
  return o;
}

// Basis of hyper-paraKaehler potentials of one degree: common kernel of
// dd₃μ − d₁d₂μ, dd₁μ + d₂d₃μ and dd₂μ + d₃d₁μ.
std::vector<Polynomial> hpk_kernel(const FlatChart& c, int degree) {
  auto mons = monomials_of_degree(c.dim(), degree);
  std::map<std::tuple<std::size_t, Mask, Polynomial::Exponents>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(mons.size());
  for (std::size_t u = 0; u < mons.size(); ++u) {
    PolyForm f = function_form(c, Polynomial::monomial(mons[u], Rational(1)));
    auto dd = [&](int a) { return poly_d(poly_d_a(c, a, f)); };
    auto dd_ab = [&](int a, int b) { return poly_d_a(c, a, poly_d_a(c, b, f)); };
    std::array<PolyForm, 3> img{dd(3) - dd_ab(1, 2), dd(1) + dd_ab(2, 3), dd(2) + dd_ab(3, 1)};
    for (std::size_t k = 0; k < 3; ++k)
      for (const auto& [m, p] : img[k].terms())
        for (const auto& [e, q] : p.terms()) {
          auto it = rows.try_emplace({k, m, e}, rows.size()).first;
          cols[u].emplace_back(it->second, q);
        }
  }
  Matrix<Rational> M(std::max<std::size_t>(rows.size(), 1), mons.size());
  for (std::size_t u = 0; u < mons.size(); ++u)
    for (const auto& [r, q] : cols[u]) M(r, u) = q;
  std::vector<Polynomial> out;
  for (const auto& v : nullspace(M)) {
    Polynomial p;
    for (std::size_t u = 0; u < mons.size(); ++u)
      if (!v[u].is_zero()) p += Polynomial::monomial(mons[u], v[u]);
    out.push_back(p);
  }
  return out;
}

Outcome c10() {
  Outcome o;
  std::mt19937 rng(20240601);
  std::size_t count = 0, chains = 0;
  for (std::size_t n : {1u, 2u}) {
    FlatChart c(n);
    for (int t = 0; t < 25; ++t) {
      Polynomial mu = standard_potential(c);
      int top = 2 + t % 5;  // degrees 2..6
      for (int k = 0; k < 4; ++k) {
        int deg = k == 0 ? top : 2 + static_cast<int>(rng() % static_cast<unsigned>(top - 1));
        auto mons = monomials_of_degree(c.dim(), deg);
        mu += Polynomial::monomial(mons[rng() % mons.size()], Rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)));
      }
      auto r = potential_equivalences(c, mu);
      std::string tag = "n=" + std::to_string(n) + " mu=" + mu.str();
      o.require(r.metrics_agree, "four metrics differ for " + tag);
      o.require(r.hpkt && r.torsion_matches, "T != d_aF_a for " + tag);
      o.require(r.real_pairs == std::array<bool, 3>{true, true, true}, "real-pair identity fails for " + tag);
      o.require(r.operator_links && r.anticommute, "operator links fail for " + tag);
      if (t % 2 == 0) {
        Polynomial s = solve_potential(c, r.forms.F[2]);
        o.require(forms_from_potential(c, s).F[2] == r.forms.F[2], "solver residual for " + tag);
      }
      if (!o.pass) return o;
      ++count;
    }
    // full chain on hyper-paraKaehler potentials
    for (int deg : {2, 3}) {
      auto ker = hpk_kernel(c, deg);
      for (int t = 0; t < 3 && !ker.empty(); ++t) {
        Polynomial mu = standard_potential(c);
        for (const auto& b : ker) mu += b * Rational(static_cast<long>(rng() % 5) - 2);
        auto r = potential_equivalences(c, mu);
        o.require(r.full_chain, "full chain fails for n=" + std::to_string(n) + " mu=" + mu.str());
        ++chains;
      }
      o.require(deg != 2 || !ker.empty(), "no quadratic hyper-paraKaehler potentials for n=" + std::to_string(n));
    }
  }
  o.detail = std::to_string(count) + " random potentials, " + std::to_string(chains) + " hyper-paraKaehler" +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

Outcome c11() {
  Outcome o;
  FlatChart c(1);
  std::mt19937 rng(77);
  int count = 0;
  for (int t = 0; t < 12; ++t) {
    Polynomial p(Rational(1 + static_cast<long>(rng() % 3)));
    for (int k = 0; k < 3; ++k) {
      auto mons = monomials_of_degree(4, 1 + static_cast<int>(rng() % 3));
      p += Polynomial::monomial(mons[rng() % mons.size()], Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2)));
    }
    o.require(dim4_checks(c, p, standard_potential(c)).hpkt, "not HPKT for p = " + p.str());
    ++count;
  }
  o.detail = std::to_string(count) + " conformal factors" + (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

Outcome c12() {
  Outcome o;
  for (const auto& k : catalog_keys()) {
    auto e = build(k);
    auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
    if (!v.is_hpkt) continue;
    o.require(v.lee_equal, "Lee forms differ on " + k);
  }
  auto e = build("su_mm1_killing:2");
  auto v = check_hpkt(e.algebra, e.structure, e.metric, false);
  o.require(v.lee[0].theta.is_zero(), "bi-invariant entry has theta = " + str(e, v.lee[0].theta));
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {1, "su(2,1) met2: torsion, dT = -4 UVST, not strong", c1},
      {2, "sl(3,R) met1: d1F1 = d2F2 = d3F3, dT = -8 UVST, not strong", c2},
      {3, "2R+sl(2,C): T = S^dS - Y^dY, dT = 0, strong", c3},
      {4, "su(2,1) Killing: compatible, T = -B([,],), dT = 0, flat, Einstein", c4},
      {5, "h_2n+R3 (n = 1, 2): Abelian identities, integrable, HPKT", c5},
      {6, "h_2 x sl(2,R): T = dZ^Z, dT = dZ^dZ != 0", c6},
      {7, "D^2 = 0 iff integrable on catalog and controls", c7},
      {8, "four HPKT characterizations agree", c8},
      {9, "dagger^2 = 2 dagger + 3, A2/B2 projectors", c9},
      {10, "flat-chart potential identities and solver", c10},
      {11, "dim-4 conformal factors are HPKT", c11},
      {12, "Lee forms equal on HPKT entries, zero on the bi-invariant entry", c12},
  };
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") only = std::stoi(argv[2]);
  bool ok = true;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && r.pass;
    std::ostringstream line;
    line << (r.pass ? "PASS" : "FAIL") << "  C" << c.id << "  " << c.title;
    if (!r.detail.empty()) line << "  [" << r.detail << "]";
    line.precision(2);
    line << std::fixed << "  (" << s << " s)";
    std::cout << line.str() << std::endl;
  }
  return ok ? 0 : 1;
}
