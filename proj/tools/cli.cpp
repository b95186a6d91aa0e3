#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include "CLI11.hpp"
#include "hyperpara/io.hpp"

namespace hyperpara::cli {

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Schema, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Schema, path + ": " + e.what());
  }
}

struct Common {
  bool json = false;
  bool timing = false;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Verified {
  CatalogEntry entry;
  EntryReport report;
  double ms = 0;
};

Verified verify_one(CatalogEntry e, bool with_d2) {
  auto t0 = std::chrono::steady_clock::now();
  EntryReport r = verify_entry(e, with_d2);
  return {std::move(e), std::move(r), ms_since(t0)};
}

int cmd_verify(const std::string& key, const std::string& input, bool all, bool no_d2, bool fallback, const Common& c,
               std::ostream& out) {
  if (fallback) {
    CatalogKey k = parse_key(key);
    if (k.name != "su_mm1_killing") throw Error(ErrorCode::UnsupportedParameter, "--float-fallback applies to su_mm1_killing only");
    auto r = float_killing(k.param);
    if (c.json) {
      emit(out, float_report_json(r));
    } else {
      out << "su_mm1_killing:" << r.m << " (dim " << r.dim << ", double, tol " << r.tolerance << ")"
          << (r.passed() ? "  PASS" : "  FAIL") << "\n  einstein: Ric = " << r.einstein_constant << " B\n";
      for (const auto& f : r.failures) out << "  failed: " << f << "\n";
    }
    return r.passed() ? kPass : kMismatch;
  }
  std::vector<Verified> done;
  if (all) {
    std::vector<std::future<Verified>> jobs;
    for (const auto& k : catalog_keys())
      jobs.push_back(std::async(std::launch::async, [k, no_d2] { return verify_one(build(k), !no_d2); }));
    for (auto& j : jobs) done.push_back(j.get());
  } else if (!input.empty()) {
    done.push_back(verify_one(entry_from_json(read_json(input)), !no_d2));
  } else {
    if (key.empty()) throw Error(ErrorCode::Schema, "verify needs a KEY, --input FILE or --all");
    done.push_back(verify_one(build(key), !no_d2));
  }
  bool ok = true;
  Json arr = Json::array();
  for (const auto& v : done) {
    ok = ok && v.report.passed();
    ReportOptions opt;
    if (c.timing || !c.json) opt.timing_ms = v.ms;
    if (c.json)
      arr.push_back(report_json(v.entry, v.report, opt));
    else
      out << report_text(v.entry, v.report, opt);
  }
  if (c.json) emit(out, all ? arr : arr[0]);
  return ok ? kPass : kMismatch;
}

int cmd_d2(const std::string& key, const std::string& input, const Common& c, std::ostream& out) {
  CatalogEntry e = input.empty() ? build(key) : entry_from_json(read_json(input));
  auto r = check_d_squared(e.algebra, e.structure);
  bool integrable = check_integrable(e.algebra, e.structure, {}).integrable();
  if (c.json) {
    Json j = d2_json(e, r);
    j["integrable"] = integrable;
    emit(out, j);
  } else {
    out << d2_text(e, r);
  }
  return integrable && !r.nilpotent ? kMismatch : kPass;
}

int cmd_potential(std::size_t n, const std::string& mu_file, bool solve, const std::string& f3_file, int dmax,
                  const Common& c, std::ostream& out) {
  if (solve) {
    if (f3_file.empty()) throw Error(ErrorCode::Schema, "--solve needs --f3 FILE");
    auto in = poly_form_from_json(read_json(f3_file), "F3");
    FlatChart chart(in.n);
    Polynomial mu = solve_potential(chart, in.form, {dmax});
    if (c.json)
      emit(out, Json{{"n", in.n}, {"mu", polynomial_to_json(mu, chart.dim())}});
    else
      out << "mu = " << mu.str() << "\n";
    return kPass;
  }
  Polynomial mu;
  if (!mu_file.empty()) {
    auto in = potential_from_json(read_json(mu_file));
    if (n != 0 && n != in.n) throw Error(ErrorCode::Schema, "--n differs from the n in " + mu_file);
    n = in.n;
    mu = in.mu;
  }
  if (n == 0) n = 1;
  FlatChart chart(n);
  if (mu_file.empty()) mu = standard_potential(chart);
  auto r = potential_equivalences(chart, mu);
  bool ok = r.metrics_agree && r.hpkt && r.torsion_matches && r.real_pairs[0] && r.real_pairs[1] && r.real_pairs[2] &&
            r.operator_links && r.anticommute;
  if (c.json) {
    emit(out, potential_report_json(chart, mu, r));
  } else {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "mu = " << mu.str() << " on R^" << chart.dim() << "\n"
        << "  four metrics agree: " << yn(r.metrics_agree) << "\n"
        << "  d1F1 = d2F2 = d3F3: " << yn(r.hpkt) << "\n"
        << "  T = -1/2 d1d2d3 mu: " << yn(r.torsion_matches) << "\n"
        << "  real-pair identities: " << yn(r.real_pairs[0] && r.real_pairs[1] && r.real_pairs[2]) << "\n"
        << "  operator links: " << yn(r.operator_links && r.anticommute) << "\n"
        << "  hyper-paraKaehler: " << yn(r.hyper_para_kaehler) << "\n";
  }
  return ok ? kPass : kMismatch;
}

int cmd_list(const Common& c, std::ostream& out) {
  Json arr = Json::array();
  for (const auto& k : catalog_keys()) {
    auto e = build(k);
    Json flags = Json::object();
    auto put = [&](const char* name, const std::optional<Expect<bool>>& x) {
      if (x) flags[name] = x->value;
    };
    put("integrable", e.expected.integrable);
    put("hpkt", e.expected.hpkt);
    put("strong", e.expected.strong);
    put("flat", e.expected.flat);
    put("einstein", e.expected.einstein);
    arr.push_back({{"key", k}, {"dim", e.dim()}, {"expected", flags}});
  }
  if (c.json) {
    emit(out, arr);
    return kPass;
  }
  for (const auto& j : arr) {
    out << std::left << std::setw(20) << j["key"].get<std::string>() << " dim " << std::setw(3) << j["dim"].get<int>();
    for (const auto& [f, v] : j["expected"].items()) out << " " << f << "=" << (v.get<bool>() ? "yes" : "no");
    out << "\n";
  }
  out << "families:";
  for (const auto& [f, p] : families()) out << " " << f << (p ? std::string("(") + p + ")" : "");
  out << "\n";
  return kPass;
}

int cmd_export(const std::string& key, std::ostream& out) {
  auto e = build(key);
  emit(out, Json{{"name", e.key},
                 {"algebra", to_json(e.algebra)},
                 {"structure", {{"J2", to_json(e.structure.J2)}, {"J3", to_json(e.structure.J3)}, {"metric", to_json(e.metric)}}}});
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of hyper-paracomplex structures with skew torsion", "hyperpara"};
  app.set_version_flag("--version", engine_version());
  app.require_subcommand(1);
  Common c;
  std::string key, input, mu_file, f3_file;
  bool all = false, no_d2 = false, fallback = false, solve = false;
  std::size_t n = 0;
  int dmax = 6;

  auto* verify = app.add_subcommand("verify", "Verify a catalog entry or an input structure");
  verify->add_option("key", key, "Catalog key, e.g. su21_met2, heis_r3:2, perturbed:heis_r3:1:J3flip");
  verify->add_option("--input", input, "JSON file with algebra and structure");
  verify->add_flag("--all", all, "Verify every default catalog entry");
  verify->add_flag("--no-d2", no_d2, "Skip the D^2 check");
  verify->add_flag("--float-fallback", fallback, "Double-precision verifier for su_mm1_killing");

  auto* d2 = app.add_subcommand("d2", "Check D^2 = 0 on frame 1-forms");
  d2->add_option("key", key, "Catalog key");
  d2->add_option("--input", input, "JSON file with algebra and structure");

  auto* pot = app.add_subcommand("potential", "Potential identities on the flat chart");
  pot->add_option("--n", n, "Chart quaternionic dimension (R^{4n})")->check(CLI::Range(1, 15));
  pot->add_option("--mu", mu_file, "JSON potential file");
  pot->add_flag("--solve", solve, "Solve F3 = -1/2(dd3 + d1d2)mu for mu");
  pot->add_option("--f3", f3_file, "JSON 2-form file for --solve");
  pot->add_option("--dmax", dmax, "Degree budget for the solver")->check(CLI::Range(2, 12));

  auto* cat = app.add_subcommand("catalog", "Catalog commands");
  auto* list = cat->add_subcommand("list", "List catalog entries");
  auto* exp = cat->add_subcommand("export", "Write an entry as a verify --input file");
  exp->add_option("key", key, "Catalog key")->required();
  cat->require_subcommand(1);

  for (auto* s : {verify, d2, pot, list}) {
    s->add_flag("--json", c.json, "JSON output");
  }
  verify->add_flag("--timing", c.timing, "Include timing in JSON output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kInputError;
  }
  try {
    if (*verify) return cmd_verify(key, input, all, no_d2, fallback, c, out);
    if (*d2) {
      if (key.empty() && input.empty()) throw Error(ErrorCode::Schema, "d2 needs a KEY or --input FILE");
      return cmd_d2(key, input, c, out);
    }
    if (*pot) return cmd_potential(n, mu_file, solve, f3_file, dmax, c, out);
    if (*exp) return cmd_export(key, out);
    return cmd_list(c, out);
  } catch (const Error& e) {
    if (c.json) emit(out, Json{{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}});
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace hyperpara::cli
