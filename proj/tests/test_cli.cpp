#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hyperpara/io.hpp"

using namespace hyperpara;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string path(const std::string& rel) { return std::string(HP_TEST_DIR) + "/" + rel; }

// Compares with tests/golden/<name>; HYPERPARA_REGEN_GOLDEN=1 rewrites the file.
void golden(const std::string& name, const std::string& text) {
  std::string p = path("golden/" + name);
  if (std::getenv("HYPERPARA_REGEN_GOLDEN")) {
    std::ofstream(p) << text;
    return;
  }
  std::ifstream in(p);
  INFO("golden file ", p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == text);
}

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "su21_met2"}).code == cli::kPass);
  CHECK(run({"verify", "--input", path("data/heis_r3_1.json")}).code == cli::kPass);
  auto wrong = run({"verify", "--input", path("data/heis_r3_1_wrong_claim.json")});
  CHECK(wrong.code == cli::kMismatch);
  CHECK(wrong.out.find("mismatch: strong") != std::string::npos);
  auto broken = run({"verify", "--input", path("data/broken_jacobi.json")});
  CHECK(broken.code == cli::kInputError);
  CHECK(broken.err.find("(H, E, F)") != std::string::npos);
  CHECK(run({"verify", "no_such_entry"}).code == cli::kInputError);
  CHECK(run({"verify", "--input", path("data/missing.json")}).code == cli::kInputError);
  CHECK(run({"verify"}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  auto big = run({"verify", "su_mm1_killing:4"});
  CHECK(big.code == cli::kInputError);
  CHECK(big.err.find("float fallback") != std::string::npos);
}

TEST_CASE("golden JSON reports") {
  auto r = run({"verify", "su21_met2", "--json"});
  CHECK(r.code == cli::kPass);
  golden("verify_su21_met2.json", r.out);
  CHECK(Json::parse(r.out)["verdict"]["dT"] == "−4 U∧V∧S∧T");
  golden("catalog_list.json", run({"catalog", "list", "--json"}).out);
  auto d = run({"d2", "perturbed:heis_r3:1:J3flip", "--json"});
  CHECK(d.code == cli::kPass);
  CHECK(Json::parse(d.out)["nilpotent"] == false);
  golden("d2_heis_r3_J3flip.json", d.out);
  auto p = run({"potential", "--solve", "--f3", path("data/std_f3.json"), "--json"});
  CHECK(p.code == cli::kPass);
  golden("potential_solve_std.json", p.out);
}

TEST_CASE("identical inputs give byte-identical output") {
  auto a = run({"verify", "--all", "--json"});
  auto b = run({"verify", "--all", "--json"});
  CHECK(a.out == b.out);
  auto arr = Json::parse(a.out);
  auto keys = catalog_keys();
  REQUIRE(arr.size() == keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) CHECK(arr[i]["key"] == keys[i]);
}

TEST_CASE("d2 command") {
  auto r = run({"d2", "heis_r3"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("D^2 = 0") != std::string::npos);
  auto w = run({"d2", "perturbed:heis_r3:1:J3flip"});
  CHECK(w.out.find("witness") != std::string::npos);
  CHECK(run({"d2"}).code == cli::kInputError);
}

TEST_CASE("potential command") {
  auto r = run({"potential", "--n", "2"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("hyper-paraKaehler: yes") != std::string::npos);
  std::string solved = run({"potential", "--solve", "--f3", path("data/std_f3.json"), "--json"}).out;
  std::string tmp = "potential_cli_roundtrip.json";
  std::ofstream(tmp) << solved;
  auto back = run({"potential", "--mu", tmp, "--json"});
  CHECK(back.code == cli::kPass);
  auto in = poly_form_from_json(Json::parse(std::ifstream(path("data/std_f3.json"))), "F3");
  CHECK(poly_form_to_json(in.form) == Json::parse(back.out)["F"][2]);
  CHECK(run({"potential", "--solve"}).code == cli::kInputError);
  CHECK(run({"potential", "--n", "2", "--mu", tmp}).code == cli::kInputError);
}

TEST_CASE("float fallback and export") {
  auto r = run({"verify", "su_mm1_killing:4", "--float-fallback", "--json"});
  CHECK(r.code == cli::kPass);
  auto j = Json::parse(r.out);
  CHECK(j["arithmetic"] == "double");
  CHECK(j["passed"] == true);
  CHECK(run({"verify", "su21_met2", "--float-fallback"}).code == cli::kInputError);
  auto ex = run({"catalog", "export", "heis_r3:1"});
  CHECK(ex.code == cli::kPass);
  std::ifstream in(path("data/heis_r3_1.json"));
  CHECK(Json::parse(ex.out) == Json::parse(in));
  CHECK(run({"--version"}).out.find("hyperpara") != std::string::npos);
}
