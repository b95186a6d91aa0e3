#include "hyperpara/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "hyperpara/linalg.hpp"

namespace hyperpara {

namespace {

using CMatrix = Matrix<ComplexScalar>;

const ComplexScalar kI = ComplexScalar::i_unit();

Expect<bool> paper(bool b) { return {b, Source::Paper}; }
Expect<bool> derived(bool b) { return {b, Source::Derived}; }

std::size_t idx(const std::vector<std::string>& labels, const std::string& l) {
  auto it = std::find(labels.begin(), labels.end(), l);
  if (it == labels.end()) throw Error(ErrorCode::InvalidIndex, "no basis element " + l);
  return static_cast<std::size_t>(it - labels.begin());
}

// J e_a = s·e_b and J e_b = sq·s·e_a.
void setm(AMatrix& J, std::size_t a, std::size_t b, long sq, long s = 1) {
  J(b, a) = AlgebraicScalar(s);
  J(a, b) = AlgebraicScalar(sq * s);
}

// +1 on basis elements whose label starts with one of `plus`, −1 elsewhere.
AMatrix letter_metric(const std::vector<std::string>& labels, const std::string& plus) {
  std::vector<AlgebraicScalar> d;
  for (const auto& l : labels) d.emplace_back(plus.find(l[0]) != std::string::npos ? 1 : -1);
  return AMatrix::diagonal(d);
}

KForm flat_of(const CatalogEntry& e, const std::string& l) { return flat_basis(e.metric, idx(e.algebra.labels(), l)); }

KForm wedge3(const KForm& a, const KForm& b, const KForm& c) { return wedge(wedge(a, b), c); }

// Label suffixes of an XYWZ and a UVST quadruple; "-" marks an absent quadruple.
struct Block {
  std::string xywz, uvst;
};

HyperParaStructure block_structure(const std::vector<std::string>& labels, const std::vector<Block>& blocks) {
  std::size_t n = labels.size();
  AMatrix J2(n, n), J3(n, n);
  auto at = [&](char c, const std::string& s) { return idx(labels, std::string(1, c) + s); };
  for (const auto& b : blocks) {
    if (b.xywz != "-") {
      setm(J3, at('Z', b.xywz), at('X', b.xywz), -1);
      setm(J3, at('Y', b.xywz), at('W', b.xywz), -1);
      setm(J2, at('Z', b.xywz), at('W', b.xywz), 1);
      setm(J2, at('X', b.xywz), at('Y', b.xywz), 1);
    }
    if (b.uvst != "-") {
      setm(J3, at('U', b.uvst), at('V', b.uvst), -1);
      setm(J3, at('S', b.uvst), at('T', b.uvst), -1);
      setm(J2, at('U', b.uvst), at('T', b.uvst), 1);
      setm(J2, at('V', b.uvst), at('S', b.uvst), 1);
    }
  }
  return HyperParaStructure::from_J2_J3(J2, J3);
}

CMatrix E(std::size_t n, std::size_t j, std::size_t k) { return elementary(n, j, k); }

void require_valid(const CatalogEntry& e) {
  auto par = check_paraquaternionic(e.structure);
  if (!par.ok) throw Error(ErrorCode::Schema, e.key + ": " + par.defects.front());
  if (!check_integrable(e.algebra, e.structure, {}).integrable())
    throw Error(ErrorCode::Schema, e.key + ": structure not integrable");
  require_compatible(e.structure, e.metric);
}

CatalogEntry from_matrices(const std::string& key, MatrixBasis mb, const std::vector<Block>& blocks,
                           const std::string& plus, bool metric_is_trace_form) {
  CatalogEntry e;
  e.key = key;
  e.algebra = from_matrix_basis(mb);
  // ½ tr(XY) is complex-valued on complex matrix algebras such as sl(2,ℂ)
  try {
    e.trace_form = trace_form(mb);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NonRealTrace) throw;
  }
  e.structure = block_structure(mb.labels, blocks);
  e.metric = metric_is_trace_form ? e.trace_form.value() : letter_metric(mb.labels, plus);
  return e;
}

std::string suffix(int m, std::size_t j) { return m == 2 ? "" : std::to_string(j); }
std::string suffix(int m, std::size_t j, std::size_t k) { return m == 2 ? "" : std::to_string(j) + std::to_string(k); }

KForm met2_torsion(const CatalogEntry& e, bool sl) {
  struct Term {
    int c;
    const char* m;
  };
  std::vector<Term> terms = {{2, "XYW"}, {-1, "XUV"}, {1, "XST"}, {1, "YUS"}, {-1, "YVT"},
                             {1, "WUT"}, {1, "WVS"}, {-1, "ZUV"}, {-1, "ZST"}};
  if (sl) {
    terms[7] = {1, "ZUT"};
    terms[8] = {-1, "ZVS"};
  }
  KForm t(e.dim(), 3);
  for (const auto& [c, m] : terms) {
    KForm w = wedge3(flat_of(e, std::string(1, m[0])), flat_of(e, std::string(1, m[1])), flat_of(e, std::string(1, m[2])));
    t += w.scaled(AlgebraicScalar(c));
  }
  return t;
}

KForm uvst(const CatalogEntry& e, const std::string& s) {
  return wedge(wedge3(flat_of(e, "U" + s), flat_of(e, "V" + s), flat_of(e, "S" + s)), flat_of(e, "T" + s));
}

CatalogEntry su21_met2() {
  std::size_t N = 3;
  MatrixBasis mb;
  mb.labels = {"X", "Y", "W", "Z", "U", "V", "S", "T"};
  mb.mats = {kI * (E(N, 1, 1) - E(N, 3, 3)),
             E(N, 1, 3) + E(N, 3, 1),
             kI * (E(N, 1, 3) - E(N, 3, 1)),
             kI * (E(N, 1, 1) + E(N, 3, 3) - ComplexScalar(2) * E(N, 2, 2)),
             E(N, 1, 2) - E(N, 2, 1),
             kI * (E(N, 1, 2) + E(N, 2, 1)),
             E(N, 2, 3) + E(N, 3, 2),
             kI * (E(N, 2, 3) - E(N, 3, 2))};
  auto e = from_matrices("su21_met2", mb, {{"", ""}}, "ZXUV", false);
  e.expected.integrable = paper(true);
  e.expected.hpkt = paper(true);
  e.expected.strong = paper(false);
  e.expected.torsion = Expect<KForm>{met2_torsion(e, false), Source::Paper};
  e.expected.d_torsion = Expect<KForm>{uvst(e, "").scaled(AlgebraicScalar(-4)), Source::Paper};
  return e;
}

CatalogEntry sl_odd_met1(int m) {
  std::size_t N = static_cast<std::size_t>(2 * m - 1);
  std::size_t M = static_cast<std::size_t>(m);
  MatrixBasis mb;
  std::vector<Block> blocks;
  for (std::size_t j = 1; j < M; ++j) {
    std::size_t c = 2 * M - j;
    std::string s = suffix(m, j);
    mb.mats.push_back(E(N, j, c) - E(N, c, j));
    mb.mats.push_back(E(N, j, c) + E(N, c, j));
    mb.mats.push_back(E(N, j, j) - E(N, c, c));
    mb.mats.push_back(E(N, j, j) + E(N, c, c) - ComplexScalar(2) * E(N, M, M));
    for (char l : std::string("XYWZ")) mb.labels.push_back(l + s);
    blocks.push_back({s, "-"});
  }
  for (std::size_t j = 1; j < M; ++j)
    for (std::size_t k = j + 1; k < 2 * M - j; ++k) {
      std::size_t c = 2 * M - j;
      std::string s = suffix(m, j, k);
      mb.mats.push_back(E(N, j, k) - E(N, k, j));
      mb.mats.push_back(E(N, k, c) - E(N, c, k));
      mb.mats.push_back(E(N, k, c) + E(N, c, k));
      mb.mats.push_back(E(N, j, k) + E(N, k, j));
      for (char l : std::string("UVST")) mb.labels.push_back(l + s);
      blocks.push_back({"-", s});
    }
  std::string key = "sl_odd_met1:" + std::to_string(m);
  auto e = from_matrices(key, mb, blocks, "ZXUV", false);
  e.expected.integrable = paper(true);
  e.expected.hpkt = paper(true);
  e.expected.strong = paper(false);
  // For m > 2 the torsion differential has cross terms between the (j,k) blocks; only
  // the single-block case has a closed form to compare against.
  if (m == 2) e.expected.d_torsion = Expect<KForm>{uvst(e, "").scaled(AlgebraicScalar(-8)), Source::Paper};
  return e;
}

// T(x,y,z) = −B([x,y],z).
KForm killing_torsion(const LieAlgebra& L, const AMatrix& B) {
  std::size_t n = L.dim();
  KForm t(n, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& [mm, c] : L.structure(i, j))
        for (std::size_t k = j + 1; k < n; ++k)
          if (!B(mm, k).is_zero()) t.add(bit(i) | bit(j) | bit(k), -(c * B(mm, k)));
  return t;
}

CatalogEntry su_mm1_killing(int m) {
  if (m > 3)
    throw Error(ErrorCode::UnsupportedParameter,
                "su_mm1_killing: exact tower arithmetic is limited to m <= 3 (use the float fallback)");
  std::size_t N = static_cast<std::size_t>(2 * m - 1);
  std::size_t M = static_cast<std::size_t>(m);
  auto B = [](const CMatrix& x, const CMatrix& y) {
    ComplexScalar t;
    CMatrix p = x * y;
    for (std::size_t i = 0; i < p.rows(); ++i) t += p(i, i);
    return t.re * AlgebraicScalar(Rational(1, 2));
  };
  std::vector<CMatrix> zs;
  for (std::size_t j = 1; j < M; ++j) {
    CMatrix z = kI * (E(N, j, j) + E(N, 2 * M - j, 2 * M - j) - ComplexScalar(2) * E(N, M, M));
    for (const auto& q : zs) z = z - ComplexScalar(B(z, q) / B(q, q)) * q;
    // −B(z,z) is a positive rational after Gram–Schmidt with rational coefficients.
    AlgebraicScalar nz = AlgebraicScalar::sqrt((-B(z, z)).rational()).inverse();
    zs.push_back(ComplexScalar(nz) * z);
  }
  MatrixBasis mb;
  std::vector<Block> blocks;
  for (std::size_t j = 1; j < M; ++j) {
    std::size_t c = 2 * M - j;
    std::string s = suffix(m, j);
    mb.mats.push_back(kI * (E(N, j, j) - E(N, c, c)));
    mb.mats.push_back(E(N, j, c) + E(N, c, j));
    mb.mats.push_back(kI * (E(N, j, c) - E(N, c, j)));
    mb.mats.push_back(zs[j - 1]);
    for (char l : std::string("XYWZ")) mb.labels.push_back(l + s);
    blocks.push_back({s, "-"});
  }
  for (std::size_t j = 1; j < M; ++j)
    for (std::size_t k = j + 1; k < 2 * M - j; ++k) {
      std::size_t c = 2 * M - j;
      std::string s = suffix(m, j, k);
      if (k <= M) {
        mb.mats.push_back(E(N, j, k) - E(N, k, j));
        mb.mats.push_back(kI * (E(N, j, k) + E(N, k, j)));
        mb.mats.push_back(E(N, k, c) + E(N, c, k));
        mb.mats.push_back(kI * (E(N, k, c) - E(N, c, k)));
      } else {
        mb.mats.push_back(E(N, k, c) - E(N, c, k));
        mb.mats.push_back(kI * (E(N, k, c) + E(N, c, k)));
        mb.mats.push_back(-(E(N, j, k) + E(N, k, j)));
        mb.mats.push_back(kI * (E(N, k, j) - E(N, j, k)));
      }
      for (char l : std::string("UVST")) mb.labels.push_back(l + s);
      blocks.push_back({"-", s});
    }
  auto e = from_matrices("su_mm1_killing:" + std::to_string(m), mb, blocks, "", true);
  e.expected.integrable = paper(true);
  e.expected.hpkt = paper(true);
  e.expected.strong = paper(true);
  e.expected.flat = paper(true);
  e.expected.einstein = paper(true);
  e.expected.torsion = Expect<KForm>{killing_torsion(e.algebra, e.metric), Source::Paper};
  e.expected.d_torsion = Expect<KForm>{KForm(e.dim(), 4), Source::Paper};
  return e;
}

CatalogEntry two_r_sl2c(bool alt) {
  CMatrix Zm = CMatrix::identity(2), Xm(2, 2), Ym(2, 2), Wm(2, 2);
  Xm(0, 1) = 1;
  Xm(1, 0) = -1;
  Ym(0, 1) = 1;
  Ym(1, 0) = 1;
  Wm(0, 0) = 1;
  Wm(1, 1) = -1;
  MatrixBasis mb;
  mb.labels = {"X", "Y", "W", "Z", "U", "V", "S", "T"};
  if (!alt)
    mb.mats = {Xm, Ym, Wm, Zm, kI * Zm, kI * Xm, kI * Ym, kI * Wm};
  else
    mb.mats = {Xm, Ym, Wm, Zm, kI * Ym, kI * Wm, kI * Zm, kI * Xm};
  auto e = from_matrices(alt ? "two_r_sl2c_alt" : "two_r_sl2c", mb, {{"", ""}}, "ZXUV", false);
  Source src = alt ? Source::Derived : Source::Paper;
  e.expected.integrable = Expect<bool>{true, src};
  e.expected.hpkt = Expect<bool>{true, src};
  e.expected.strong = Expect<bool>{true, src};
  e.expected.d_torsion = Expect<KForm>{KForm(e.dim(), 4), src};
  if (!alt) {
    KForm S = flat_of(e, "S"), Y = flat_of(e, "Y");
    e.expected.torsion =
        Expect<KForm>{wedge(S, ce_d(e.algebra, S)) - wedge(Y, ce_d(e.algebra, Y)), Source::Paper};
  }
  return e;
}

CatalogEntry heis(int n, bool sl2) {
  std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::string> labels;
  for (std::size_t j = 1; j <= 2 * nn; ++j) labels.push_back("X" + std::to_string(j));
  for (std::size_t j = 1; j <= 2 * nn; ++j) labels.push_back("Y" + std::to_string(j));
  for (const char* l : {"Z", "E1", "E2", "E3"}) labels.push_back(l);
  std::size_t D = labels.size();
  auto X = [&](std::size_t j) { return j - 1; };
  auto Y = [&](std::size_t j) { return 2 * nn + j - 1; };
  std::size_t Z = 4 * nn, E1 = Z + 1, E2 = Z + 2, E3 = Z + 3;
  std::vector<LieAlgebra::Bracket> br;
  for (std::size_t j = 1; j <= 2 * nn; ++j) br.push_back({X(j), Y(j), {{Z, AlgebraicScalar(1)}}});
  if (sl2) {
    br.push_back({E1, E2, {{E3, AlgebraicScalar(1)}}});
    br.push_back({E2, E3, {{E1, AlgebraicScalar(-1)}}});
    br.push_back({E1, E3, {{E2, AlgebraicScalar(-1)}}});
  }
  CatalogEntry e;
  e.key = std::string(sl2 ? "heis_sl2r:" : "heis_r3:") + std::to_string(n);
  e.algebra = LieAlgebra(labels, br);
  AMatrix J2(D, D), J3(D, D);
  for (std::size_t j = 1; j <= nn; ++j) {
    setm(J2, X(2 * j - 1), Y(2 * j), 1);
    setm(J2, X(2 * j), Y(2 * j - 1), 1);
    setm(J3, X(2 * j - 1), X(2 * j), -1);
    setm(J3, Y(2 * j - 1), Y(2 * j), -1);
  }
  setm(J2, Z, E2, 1);
  setm(J2, E1, E3, 1, -1);
  setm(J3, Z, E1, -1);
  setm(J3, E2, E3, -1);
  e.structure = HyperParaStructure::from_J2_J3(J2, J3);
  std::vector<AlgebraicScalar> d;
  for (std::size_t i = 0; i < D; ++i) d.emplace_back((i < 2 * nn || i == Z || i == E1) ? 1 : -1);
  e.metric = AMatrix::diagonal(d);
  KForm zf = flat_basis(e.metric, Z), dz = ce_d(e.algebra, zf);
  e.expected.integrable = paper(true);
  e.expected.hpkt = paper(true);
  e.expected.strong = derived(false);
  e.expected.torsion = Expect<KForm>{wedge(dz, zf), Source::Paper};
  e.expected.d_torsion = Expect<KForm>{wedge(dz, dz), Source::Paper};
  if (!sl2) e.expected.abelian = Expect<std::array<bool, 3>>{{true, true, true}, Source::Paper};
  return e;
}

std::vector<std::size_t> parse_indices(const std::string& s, std::size_t count, const std::string& what) {
  std::vector<std::size_t> out;
  std::size_t p = 0;
  while (p <= s.size() && out.size() < count) {
    std::size_t q = s.find(',', p);
    std::string tok = s.substr(p, q == std::string::npos ? std::string::npos : q - p);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
      throw Error(ErrorCode::UnknownKey, what + ": expected integer indices, got '" + s + "'");
    out.push_back(std::stoul(tok));
    if (q == std::string::npos) break;
    p = q + 1;
  }
  if (out.size() != count) throw Error(ErrorCode::UnknownKey, what + ": expected " + std::to_string(count) + " indices");
  return out;
}

// Indices reached from e_i by the J's; the catalog J's are signed permutations.
std::vector<bool> j_orbit(const HyperParaStructure& S, std::size_t i) {
  std::size_t n = S.dim();
  std::vector<bool> in(n, false);
  std::vector<std::size_t> stack{i};
  in[i] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (int a = 1; a <= 3; ++a)
      for (std::size_t r = 0; r < n; ++r)
        if (!S.J(a)(r, v).is_zero() && !in[r]) {
          in[r] = true;
          stack.push_back(r);
        }
  }
  return in;
}

}  // namespace

std::string source_name(Source s) {
  switch (s) {
    case Source::Paper: return "paper";
    case Source::Derived: return "derived";
    default: return "input";
  }
}

std::string CatalogKey::canonical() const { return param ? name + ":" + std::to_string(param) : name; }

std::vector<std::pair<std::string, char>> families() {
  return {{"su_mm1_killing", 'm'}, {"su21_met2", 0},   {"sl_odd_met1", 'm'}, {"two_r_sl2c", 0},
          {"two_r_sl2c_alt", 0},   {"heis_r3", 'n'},   {"heis_sl2r", 'n'}};
}

CatalogKey parse_key(const std::string& key) {
  std::string name = key, arg;
  if (auto p = key.find(':'); p != std::string::npos) {
    name = key.substr(0, p);
    arg = key.substr(p + 1);
  } else if (auto q = key.find('('); q != std::string::npos && key.back() == ')') {
    name = key.substr(0, q);
    arg = key.substr(q + 1, key.size() - q - 2);
  }
  for (const auto& [fam, letter] : families()) {
    if (fam != name) continue;
    if (!letter) {
      if (!arg.empty()) throw Error(ErrorCode::UnknownKey, name + " takes no parameter");
      return {name, 0};
    }
    int v = letter == 'm' ? 2 : 1;
    if (!arg.empty()) {
      if (!std::all_of(arg.begin(), arg.end(), ::isdigit) || arg.size() > 3)
        throw Error(ErrorCode::UnknownKey, "bad parameter in '" + key + "'");
      v = std::stoi(arg);
    }
    if (letter == 'm' && v < 2) throw Error(ErrorCode::UnsupportedParameter, name + " requires m >= 2");
    if (letter == 'n' && v < 1) throw Error(ErrorCode::UnsupportedParameter, name + " requires n >= 1");
    return {name, v};
  }
  throw Error(ErrorCode::UnknownKey, "unknown catalog key '" + key + "'");
}

std::vector<std::string> catalog_keys() {
  return {"su_mm1_killing:2", "su21_met2", "sl_odd_met1:2", "two_r_sl2c", "two_r_sl2c_alt", "heis_r3:1",
          "heis_r3:2",        "heis_sl2r:1"};
}

CatalogEntry build(const std::string& key) {
  const std::string pref = "perturbed:";
  if (key.rfind(pref, 0) == 0) {
    std::string rest = key.substr(pref.size());
    auto p = rest.find(':');
    if (p == std::string::npos) throw Error(ErrorCode::UnknownKey, "perturbed key needs BASE:SPEC");
    std::string base = rest.substr(0, p), spec = rest.substr(p + 1);
    // A numeric token after the family name belongs to the base key.
    auto q = spec.find(':');
    std::string head = spec.substr(0, q);
    if (!head.empty() && std::all_of(head.begin(), head.end(), ::isdigit)) {
      if (q == std::string::npos) throw Error(ErrorCode::UnknownKey, "perturbed key needs a SPEC");
      base += ":" + head;
      spec = spec.substr(q + 1);
    }
    return perturb(build(base), spec);
  }
  CatalogKey k = parse_key(key);
  CatalogEntry e;
  if (k.name == "su_mm1_killing")
    e = su_mm1_killing(k.param);
  else if (k.name == "su21_met2")
    e = su21_met2();
  else if (k.name == "sl_odd_met1")
    e = sl_odd_met1(k.param);
  else if (k.name == "two_r_sl2c")
    e = two_r_sl2c(false);
  else if (k.name == "two_r_sl2c_alt")
    e = two_r_sl2c(true);
  else if (k.name == "heis_r3")
    e = heis(k.param, false);
  else
    e = heis(k.param, true);
  if (e.dim() > kMaxFormDim) throw Error(ErrorCode::UnsupportedParameter, key + ": dimension above 63");
  require_valid(e);
  return e;
}

CatalogEntry perturb(const CatalogEntry& base, const std::string& spec) {
  CatalogEntry e = base;
  e.key = "perturbed:" + base.key + ":" + spec;
  e.perturbed = true;
  e.expected = {};
  std::size_t n = e.dim();
  auto& S = e.structure;
  if (spec == "J3flip") {
    for (std::size_t r = 0; r < n; ++r)
      if (!S.J3(r, 0).is_zero()) {
        S.J3(r, 0) = -S.J3(r, 0);
        break;
      }
    S.J1 = S.J3 * S.J2;
  } else if (spec.rfind("J3block:", 0) == 0) {
    // J₃ ↦ −J₃ on one J-invariant block only; the identities survive, integrability need not.
    std::size_t i = parse_indices(spec.substr(8), 1, "J3block")[0];
    if (i >= n) throw Error(ErrorCode::InvalidIndex, "J3block: index out of range");
    auto in = j_orbit(S, i);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (in[c]) S.J3(r, c) = -S.J3(r, c);
    S.J1 = S.J3 * S.J2;
  } else if (spec.rfind("shear:", 0) == 0) {
    auto ij = parse_indices(spec.substr(6), 2, "shear");
    if (ij[0] >= n || ij[1] >= n || ij[0] == ij[1]) throw Error(ErrorCode::InvalidIndex, "shear: bad indices");
    AMatrix A = AMatrix::identity(n), Ai = AMatrix::identity(n);
    A(ij[0], ij[1]) = AlgebraicScalar(1);
    Ai(ij[0], ij[1]) = AlgebraicScalar(-1);
    S.J1 = A * S.J1 * Ai;
    S.J2 = A * S.J2 * Ai;
    S.J3 = A * S.J3 * Ai;
    e.metric = Ai.transpose() * e.metric * Ai;
  } else if (spec.rfind("scaleblock:", 0) == 0) {
    std::string arg = spec.substr(11);
    auto c = arg.find(',');
    if (c == std::string::npos) throw Error(ErrorCode::UnknownKey, "scaleblock: expected i,f");
    auto i = parse_indices(arg.substr(0, c), 1, "scaleblock")[0];
    if (i >= n) throw Error(ErrorCode::InvalidIndex, "scaleblock: index out of range");
    AlgebraicScalar f(Rational::parse(arg.substr(c + 1)));
    auto in = j_orbit(S, i);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        if (in[r] != in[s] && !e.metric(r, s).is_zero())
          throw Error(ErrorCode::UnsupportedParameter, "scaleblock: metric couples the orbit to its complement");
        if (in[r] && in[s]) e.metric(r, s) = e.metric(r, s) * f;
      }
  } else if (spec.rfind("zerobracket:", 0) == 0) {
    auto ij = parse_indices(spec.substr(12), 2, "zerobracket");
    std::size_t a = std::min(ij[0], ij[1]), b = std::max(ij[0], ij[1]);
    if (b >= n || a == b) throw Error(ErrorCode::InvalidIndex, "zerobracket: bad indices");
    auto br = e.algebra.brackets();
    br.erase(std::remove_if(br.begin(), br.end(), [&](const auto& x) { return x.i == a && x.j == b; }), br.end());
    e.algebra = LieAlgebra::unchecked(e.algebra.labels(), br);
    e.trace_form.reset();
  } else {
    throw Error(ErrorCode::UnknownKey, "unknown perturbation '" + spec + "'");
  }
  if (auto v = e.algebra.jacobi_violation())
    e.defects.push_back("Jacobi fails on (" + e.algebra.labels()[(*v)[0]] + "," + e.algebra.labels()[(*v)[1]] + "," +
                        e.algebra.labels()[(*v)[2]] + ")");
  auto par = check_paraquaternionic(S);
  for (const auto& d : par.defects) e.defects.push_back(d);
  if (!check_integrable(e.algebra, S, {}).integrable()) e.defects.push_back("not integrable");
  if (auto axis = compatibility_defect(S, e.metric))
    e.defects.push_back(*axis ? "metric incompatible with J" + std::to_string(*axis) : "metric degenerate");
  return e;
}

namespace {

template <class T>
void expect_eq(std::vector<std::string>& out, const std::string& name, const std::optional<Expect<T>>& exp,
               const T& got, auto&& show) {
  if (!exp || exp->value == got) return;
  out.push_back(name + ": expected " + show(exp->value) + ", computed " + show(got) + " [" + source_name(exp->source) +
                "]");
}

std::string b2s(bool b) { return b ? "true" : "false"; }

}  // namespace

EntryReport verify_entry(const CatalogEntry& e, bool with_d2) {
  EntryReport r;
  r.key = e.key;
  const auto& L = e.algebra;
  const auto& S = e.structure;
  r.paraquaternionic = check_paraquaternionic(S);
  r.integrability = check_integrable(L, S);
  r.abelian = {check_abelian(L, S.J1, AbelianKind::Para), check_abelian(L, S.J2, AbelianKind::Para),
               check_abelian(L, S.J3, AbelianKind::Complex)};
  r.compatible = compatible_metric(S, e.metric);
  auto& mm = r.mismatches;
  auto lbl = [&](const KForm& w) { return w.is_zero() ? std::string("0") : form_str(w, L.labels()); };
  auto show_bool = [](bool b) { return b2s(b); };
  expect_eq(mm, "integrable", e.expected.integrable, r.integrability.integrable(), show_bool);
  if (e.expected.abelian && e.expected.abelian->value != r.abelian)
    mm.push_back("abelian: expected all true, computed " + b2s(r.abelian[0]) + "," + b2s(r.abelian[1]) + "," +
                 b2s(r.abelian[2]));
  if (with_d2) r.d2 = check_d_squared(L, S);
  if (with_d2 && r.integrability.integrable() && !r.d2->nilpotent) mm.push_back("D^2 != 0 on an integrable structure");
  // Without the paraquaternionic identities F_a = g(·,J_a·) need not be a 2-form.
  if (!r.compatible || !r.paraquaternionic.ok) {
    if (e.expected.hpkt) mm.push_back("metric is not hyper-parahermitian");
    return r;
  }
  r.verdict = check_hpkt(L, S, e.metric, false);
  if (r.d2) r.verdict->d2 = *r.d2;
  const auto& v = *r.verdict;
  expect_eq(mm, "hpkt", e.expected.hpkt, v.is_hpkt, show_bool);
  expect_eq(mm, "strong", e.expected.strong, v.is_strong, show_bool);
  expect_eq(mm, "torsion", e.expected.torsion, v.daFa[0], lbl);
  expect_eq(mm, "dT", e.expected.d_torsion, v.d_torsion, lbl);
  if (v.is_hpkt) {
    try {
      r.flat = hpkt_connection(L, S, e.metric, v.torsion).is_zero();
    } catch (const Error& err) {
      mm.push_back(std::string("hpkt connection: ") + err.what());
    }
    if (!v.lee_equal) mm.push_back("Lee forms differ on an HPKT structure");
  }
  if (e.expected.flat) expect_eq(mm, "flat", e.expected.flat, r.flat.value_or(false), show_bool);
  if (e.trace_form) {
    Curvature R = curvature(levi_civita(L, e.metric), L);
    r.einstein = einstein_constant(ricci(R), *e.trace_form);
  }
  expect_eq(mm, "einstein", e.expected.einstein, r.einstein.has_value(), show_bool);
  // The equivalence of the characterizations presumes a Lie algebra and an integrable structure.
  if (!L.jacobi_violation() && r.integrability.integrable() && !v.characterizations_agree)
    mm.push_back("holomorphic characterizations disagree with d_aF_a");
  return r;
}

}  // namespace hyperpara
