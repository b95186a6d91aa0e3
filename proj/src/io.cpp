#include "hyperpara/io.hpp"

#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace hyperpara {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Schema, what); }

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) schema(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

std::size_t index_from_json(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || static_cast<std::size_t>(j.get<long long>()) >= n)
    schema(where + ": index out of range");
  return j.get<std::size_t>();
}

std::string yes(bool b) { return b ? "yes" : "no"; }

Json expect_json(const std::optional<Expect<bool>>& e) {
  if (!e) return nullptr;
  return Json{{"value", e->value}, {"source", source_name(e->source)}};
}

}  // namespace

std::string engine_version() { return std::string("hyperpara ") + HYPERPARA_VERSION; }

Json to_json(const Rational& q) { return q.str(); }

Json to_json(const AlgebraicScalar& a) {
  Json terms = Json::array();
  for (const auto& [r, q] : a.terms()) {
    Json roots = Json::array();
    if (r != 1)
      for (auto p : prime_factors(r)) roots.push_back(p);
    terms.push_back({{"roots", roots}, {"coeff", to_json(q)}});
  }
  return Json{{"terms", terms}};
}

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const Error&) {
  }
  schema("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

AlgebraicScalar scalar_from_json(const Json& j) {
  if (!j.is_object()) return rational_from_json(j);
  AlgebraicScalar out;
  for (const auto& t : field(j, "terms", "algebraic scalar")) {
    AlgebraicScalar::Radicand r = 1;
    for (const auto& p : field(t, "roots", "algebraic term")) {
      if (!p.is_number_integer() || p.get<long long>() <= 0) schema("radicands must be positive integers");
      r *= p.get<AlgebraicScalar::Radicand>();
    }
    out += AlgebraicScalar::root_term(rational_from_json(field(t, "coeff", "algebraic term")), r);
  }
  return out;
}

Json to_json(const LieAlgebra& L) {
  Json br = Json::array();
  for (const auto& b : L.brackets()) {
    Json out = Json::object();
    for (const auto& [k, c] : b.out) out[std::to_string(k)] = c.is_rational() ? to_json(c.rational()) : to_json(c);
    br.push_back({{"i", b.i}, {"j", b.j}, {"out", out}});
  }
  return Json{{"dim", L.dim()}, {"labels", L.labels()}, {"brackets", br}};
}

LieAlgebra algebra_from_json(const Json& j) {
  const Json& dim = field(j, "dim", "algebra");
  if (!dim.is_number_integer() || dim.get<long long>() <= 0) schema("algebra: dim must be a positive integer");
  std::size_t n = dim.get<std::size_t>();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) schema("algebra: labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != n) schema("algebra: label count differs from dim");
  } else {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  }
  std::vector<LieAlgebra::Bracket> brackets;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : field(j, "brackets", "algebra")) {
    std::size_t i = index_from_json(field(b, "i", "bracket"), n, "bracket i");
    std::size_t k = index_from_json(field(b, "j", "bracket"), n, "bracket j");
    if (i == k) schema("bracket: i and j must differ");
    SparseVec out;
    for (const auto& [key, v] : field(b, "out", "bracket").items()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        schema("bracket out keys must be indices, got \"" + key + "\"");
      }
      if (idx >= n) schema("bracket out index out of range");
      AlgebraicScalar c = scalar_from_json(v);
      if (i > k) c = -c;
      out.emplace_back(idx, c);
    }
    auto pr = std::minmax(i, k);
    if (!seen.insert(pr).second) schema("bracket [" + labels[pr.first] + ", " + labels[pr.second] + "] given twice");
    brackets.push_back({pr.first, pr.second, out});
  }
  return LieAlgebra(labels, brackets);
}

Json to_json(const AMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j).is_rational() ? to_json(m(i, j).rational()) : to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

AMatrix matrix_from_json(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) schema(what + ": expected " + std::to_string(n) + " rows");
  AMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) schema(what + ": row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = scalar_from_json(j[i][k]);
  }
  return m;
}

StructureInput structure_from_json(const Json& j, std::size_t n) {
  StructureInput s;
  s.structure = HyperParaStructure::from_J2_J3(matrix_from_json(field(j, "J2", "structure"), n, "J2"),
                                               matrix_from_json(field(j, "J3", "structure"), n, "J3"));
  if (j.contains("J1") && !(matrix_from_json(j.at("J1"), n, "J1") == s.structure.J1))
    schema("structure: explicit J1 differs from J3·J2");
  s.metric = matrix_from_json(field(j, "metric", "structure"), n, "metric");
  return s;
}

CatalogEntry entry_from_json(const Json& j) {
  CatalogEntry e;
  e.key = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "input";
  e.algebra = algebra_from_json(field(j, "algebra", "input"));
  auto s = structure_from_json(field(j, "structure", "input"), e.algebra.dim());
  e.structure = s.structure;
  e.metric = s.metric;
  if (j.contains("expected")) {
    const Json& x = j.at("expected");
    if (!x.is_object()) schema("expected: must be an object of flags");
    std::map<std::string, std::optional<Expect<bool>>*> flags{{"integrable", &e.expected.integrable},
                                                              {"hpkt", &e.expected.hpkt},
                                                              {"strong", &e.expected.strong},
                                                              {"flat", &e.expected.flat},
                                                              {"einstein", &e.expected.einstein}};
    for (const auto& [k, v] : x.items()) {
      auto it = flags.find(k);
      if (it == flags.end() || !v.is_boolean()) schema("expected: unknown flag or non-boolean value for \"" + k + "\"");
      *it->second = Expect<bool>{v.get<bool>(), Source::Input};
    }
  }
  return e;
}

Json form_terms(const KForm& w) {
  Json out = Json::array();
  for (const auto& [m, c] : lex_terms(w))
    out.push_back({{"indices", mask_indices(m)}, {"coeff", c.is_rational() ? to_json(c.rational()) : to_json(c)}});
  return out;
}

KForm form_from_terms(const Json& j, std::size_t dim, int degree) {
  if (!j.is_array()) schema("form: expected an array of terms");
  KForm w(dim, degree);
  for (const auto& t : j) {
    std::vector<std::size_t> idx;
    for (const auto& i : field(t, "indices", "form term")) idx.push_back(index_from_json(i, dim, "form index"));
    if (static_cast<int>(idx.size()) != degree) schema("form term has the wrong degree");
    w += KForm::monomial(dim, idx, scalar_from_json(field(t, "coeff", "form term")));
  }
  return w;
}

Json polynomial_to_json(const Polynomial& p, std::size_t nvars) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Polynomial::Exponents x = e;
    x.resize(std::max(nvars, x.size()), 0);
    out.push_back({{"exps", x}, {"coeff", to_json(c)}});
  }
  return out;
}

Polynomial polynomial_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array()) schema("polynomial: expected an array of monomials");
  Polynomial p;
  for (const auto& t : j) {
    Polynomial::Exponents e;
    for (const auto& x : field(t, "exps", "monomial")) {
      if (!x.is_number_integer() || x.get<long long>() < 0) schema("monomial exponents must be non-negative integers");
      e.push_back(x.get<unsigned>());
    }
    if (e.size() != nvars) schema("monomial has " + std::to_string(e.size()) + " exponents, expected " + std::to_string(nvars));
    p += Polynomial::monomial(e, rational_from_json(field(t, "coeff", "monomial")));
  }
  return p;
}

namespace {
std::size_t chart_n(const Json& j) {
  const Json& n = field(j, "n", "potential input");
  if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 15) schema("n must be in 1..15");
  return n.get<std::size_t>();
}
}  // namespace

PotentialInput potential_from_json(const Json& j) {
  PotentialInput in;
  in.n = chart_n(j);
  in.mu = polynomial_from_json(field(j, "mu", "potential input"), 4 * in.n);
  return in;
}

Json poly_form_to_json(const PolyForm& w) {
  Json out = Json::array();
  for (const auto& [m, p] : lex_terms(w)) out.push_back({{"indices", mask_indices(m)}, {"coeff", polynomial_to_json(p, w.dim())}});
  return out;
}

PolyFormInput poly_form_from_json(const Json& j, const std::string& name) {
  PolyFormInput in;
  in.n = chart_n(j);
  std::size_t N = 4 * in.n;
  const Json& terms = field(j, name.c_str(), "form input");
  if (!terms.is_array()) schema(name + ": expected an array of terms");
  in.form = PolyForm(N, 2);
  for (const auto& t : terms) {
    std::vector<std::size_t> idx;
    for (const auto& i : field(t, "indices", "form term")) idx.push_back(index_from_json(i, N, "form index"));
    if (idx.size() != 2) schema(name + ": terms must have two indices");
    in.form += PolyForm::monomial(N, idx, polynomial_from_json(field(t, "coeff", "form term"), N));
  }
  return in;
}

std::vector<AlgebraicScalar::Radicand> scalar_tower(const CatalogEntry& e) {
  std::set<AlgebraicScalar::Radicand> ps;
  auto add = [&](const AlgebraicScalar& a) {
    auto q = a.primes();
    ps.insert(q.begin(), q.end());
  };
  for (const auto& b : e.algebra.brackets())
    for (const auto& [k, c] : b.out) add(c);
  for (std::size_t i = 0; i < e.metric.rows(); ++i)
    for (std::size_t j = 0; j < e.metric.cols(); ++j) add(e.metric(i, j));
  return {ps.begin(), ps.end()};
}

Json d2_json(const CatalogEntry& e, const DSquareReport& r) {
  Json j{{"key", e.key}, {"nilpotent", r.nilpotent}};
  if (r.witness) {
    const auto& L = e.algebra.labels();
    Json dir = Json::array();
    for (auto i : r.direction) dir.push_back(L.at(i));
    j["witness"] = {{"one_form", "e^" + L.at(*r.witness)},
                    {"order", order_name(r.order)},
                    {"direction", dir},
                    {"value", form_str(r.witness_value, L)},
                    {"terms", form_terms(r.witness_value)}};
  }
  return j;
}

std::string d2_text(const CatalogEntry& e, const DSquareReport& r) {
  std::ostringstream os;
  os << e.key << ": D^2 " << (r.nilpotent ? "= 0 on all frame 1-forms" : "!= 0") << "\n";
  if (r.witness) {
    const auto& L = e.algebra.labels();
    os << "  witness: f e^" << L.at(*r.witness) << ", " << order_name(r.order) << " coefficient";
    if (!r.direction.empty()) {
      os << " (";
      for (std::size_t i = 0; i < r.direction.size(); ++i) os << (i ? ", " : "") << L.at(r.direction[i]);
      os << ")";
    }
    os << " = " << form_str(r.witness_value, L) << "\n";
  }
  return os.str();
}

Json report_json(const CatalogEntry& e, const EntryReport& r, const ReportOptions& opt) {
  const auto& L = e.algebra.labels();
  Json j;
  j["engine"] = engine_version();
  j["key"] = e.key;
  j["dim"] = e.dim();
  j["labels"] = L;
  j["scalar_tower"] = scalar_tower(e);
  j["perturbed"] = e.perturbed;
  j["defects"] = e.defects;
  j["paraquaternionic"] = r.paraquaternionic.ok;
  j["integrable"] = r.integrability.integrable();
  j["nijenhuis_vanishes"] = r.integrability.vanishes;
  j["compatible"] = r.compatible;
  j["abelian"] = r.abelian;
  if (r.d2) j["d2"] = d2_json(e, *r.d2);
  if (r.verdict) {
    const auto& v = *r.verdict;
    Json h;
    h["hpkt"] = v.is_hpkt;
    h["strong"] = v.is_strong;
    Json F = Json::array(), dF = Json::array(), lee = Json::array();
    for (int a = 0; a < 3; ++a) {
      F.push_back(form_str(v.kaehler[a], L));
      dF.push_back(form_str(v.daFa[a], L));
      lee.push_back(form_str(v.lee[a].theta, L));
    }
    h["kaehler"] = F;
    h["daFa"] = dF;
    h["torsion"] = form_str(v.torsion, L);
    h["torsion_terms"] = form_terms(v.torsion);
    h["dT"] = form_str(v.d_torsion, L);
    h["dT_terms"] = form_terms(v.d_torsion);
    h["lee"] = lee;
    h["lee_equal"] = v.lee_equal;
    h["holomorphic"] = {{"b", v.holomorphic.b}, {"c", v.holomorphic.c}, {"d", v.holomorphic.d}};
    h["characterizations_agree"] = v.characterizations_agree;
    j["verdict"] = h;
  } else {
    j["verdict"] = nullptr;
  }
  j["flat"] = r.flat ? Json(*r.flat) : Json(nullptr);
  if (r.einstein)
    j["einstein_constant"] = r.einstein->is_rational() ? to_json(r.einstein->rational()) : to_json(*r.einstein);
  else
    j["einstein_constant"] = nullptr;
  Json ex;
  const auto& x = e.expected;
  ex["integrable"] = expect_json(x.integrable);
  ex["hpkt"] = expect_json(x.hpkt);
  ex["strong"] = expect_json(x.strong);
  ex["flat"] = expect_json(x.flat);
  ex["einstein"] = expect_json(x.einstein);
  ex["abelian"] = x.abelian ? Json{{"value", x.abelian->value}, {"source", source_name(x.abelian->source)}} : Json(nullptr);
  ex["torsion"] = x.torsion ? Json{{"value", form_str(x.torsion->value, L)}, {"source", source_name(x.torsion->source)}}
                            : Json(nullptr);
  ex["dT"] = x.d_torsion
                 ? Json{{"value", form_str(x.d_torsion->value, L)}, {"source", source_name(x.d_torsion->source)}}
                 : Json(nullptr);
  j["expected"] = ex;
  j["mismatches"] = r.mismatches;
  j["passed"] = r.passed();
  if (opt.timing_ms) j["timing_ms"] = *opt.timing_ms;
  return j;
}

std::string report_text(const CatalogEntry& e, const EntryReport& r, const ReportOptions& opt) {
  const auto& L = e.algebra.labels();
  std::ostringstream os;
  os << e.key << " (dim " << e.dim() << ")" << (r.passed() ? "  PASS" : "  FAIL") << "\n";
  for (const auto& d : e.defects) os << "  defect: " << d << "\n";
  os << "  paraquaternionic: " << yes(r.paraquaternionic.ok) << "\n";
  os << "  integrable: " << yes(r.integrability.integrable()) << " (N1 " << yes(r.integrability.vanishes[0]) << ", N2 "
     << yes(r.integrability.vanishes[1]) << ", N3 " << yes(r.integrability.vanishes[2]) << " vanish)\n";
  os << "  compatible: " << yes(r.compatible) << "\n";
  if (r.d2) os << "  D^2 = 0: " << yes(r.d2->nilpotent) << "\n";
  if (r.verdict) {
    const auto& v = *r.verdict;
    os << "  hpkt: " << yes(v.is_hpkt) << "\n";
    if (v.is_hpkt) {
      os << "  T = " << form_str(v.torsion, L) << "\n";
      os << "  dT = " << form_str(v.d_torsion, L) << "\n";
      os << "  strong: " << yes(v.is_strong) << "\n";
      os << "  lee forms equal: " << yes(v.lee_equal) << " (theta = " << form_str(v.lee[0].theta, L) << ")\n";
    }
    os << "  characterizations agree: " << yes(v.characterizations_agree) << "\n";
  }
  if (r.flat) os << "  flat: " << yes(*r.flat) << "\n";
  if (r.einstein) os << "  einstein: Ric = " << r.einstein->str() << " B\n";
  for (const auto& m : r.mismatches) os << "  mismatch: " << m << "\n";
  if (opt.timing_ms) os << "  time: " << std::fixed << std::setprecision(1) << *opt.timing_ms << " ms\n";
  return os.str();
}

Json potential_report_json(const FlatChart& c, const Polynomial& mu, const PotentialReport& r) {
  Json j;
  j["engine"] = engine_version();
  j["n"] = c.n();
  j["mu"] = polynomial_to_json(mu, c.dim());
  j["mu_text"] = mu.str();
  Json F = Json::array();
  for (const auto& f : r.forms.F) F.push_back(poly_form_to_json(f));
  j["F"] = F;
  j["metrics_agree"] = r.metrics_agree;
  j["hpkt"] = r.hpkt;
  j["torsion_matches"] = r.torsion_matches;
  j["torsion"] = poly_form_to_json(r.torsion);
  j["real_pairs"] = r.real_pairs;
  j["operator_links"] = r.operator_links;
  j["anticommute"] = r.anticommute;
  j["hyper_para_kaehler"] = r.hyper_para_kaehler;
  j["full_chain"] = r.full_chain;
  return j;
}

Json float_report_json(const FloatKillingReport& r) {
  return Json{{"engine", engine_version()},
              {"key", "su_mm1_killing:" + std::to_string(r.m)},
              {"arithmetic", "double"},
              {"tolerance", r.tolerance},
              {"dim", r.dim},
              {"paraquaternionic", r.paraquaternionic},
              {"integrable", r.integrable},
              {"compatible", r.compatible},
              {"biinvariant", r.biinvariant},
              {"hpkt", r.hpkt},
              {"torsion_matches", r.torsion_matches},
              {"strong", r.strong},
              {"flat", r.flat},
              {"einstein", r.einstein},
              {"einstein_constant", r.einstein_constant},
              {"failures", r.failures},
              {"passed", r.passed()}};
}

}  // namespace hyperpara
