// Drives the installed CLI binary and checks output and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = (env.empty() ? "" : env + " ") + std::string(WK_CLI_PATH) + " " +
                    args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) {
  return std::string(WK_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("validate: good poset exits 0, violations exit 1") {
  RunResult good = run("validate " + data("divisor_6.json"));
  CHECK(good.exit_code == 0);
  json j = json::parse(good.out);
  CHECK(j["valid"] == true);
  CHECK(j["elements"] == 4);
  CHECK(j["has_joins"] == true);

  RunResult bad = run("validate " + data("broken_norm.json"));
  CHECK(bad.exit_code == 1);
  json jb = json::parse(bad.out);
  CHECK(jb["valid"] == false);
  CHECK(std::string(jb["error"]).find("axiom 1") != std::string::npos);

  RunResult badmap = run("validate " + data("bad_map.json"));
  CHECK(badmap.exit_code == 1);
  CHECK(std::string(json::parse(badmap.out)["error"]).find("not monotone") !=
        std::string::npos);
}

TEST_CASE("validate: malformed json exits 2") {
  RunResult r = run("validate " + data("word_fold12.json"));
  CHECK(r.exit_code == 0);  // word file validates as a word document
  RunResult missing = run("validate /definitely/not/a/file.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("eval: fold transfer is Witt addition") {
  RunResult r = run("eval " + data("word_fold12.json") + " " + data("vec_pair11.json"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["coords"]["1"] == "2");
  CHECK(j["coords"]["2"] == "1");
}

TEST_CASE("eval --ghost: norm along mult-2 squares alternate coordinates") {
  RunResult r = run("eval --ghost " + data("word_norm2_13.json") + " " +
                    data("vec_13_ones.json"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  // witt (1,1) over {1,3} has ghost <1,4>; the norm ghost is <1,1,4,16>
  CHECK(j["coordinates"] == "ghost");
  CHECK(j["coords"]["1"] == "1");
  CHECK(j["coords"]["2"] == "1");
  CHECK(j["coords"]["3"] == "4");
  CHECK(j["coords"]["6"] == "16");
}

TEST_CASE("eval: the empty word echoes its input") {
  RunResult r = run("eval " + data("word_empty.json") + " " + data("vec_13_ones.json"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["coords"]["1"] == "1");
  CHECK(j["coords"]["3"] == "1");
}

TEST_CASE("verify: deterministic output for a fixed seed") {
  RunResult a = run("verify dwork --size 4 --seed 7 --trials 5");
  RunResult b = run("verify dwork --size 4 --seed 7 --trials 5");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(j["ok"] == true);
  CHECK(j["seed"] == 7);

  RunResult c = run("verify tn --size 3 --trials 3");
  CHECK(c.exit_code == 0);
  CHECK(json::parse(c.out)["ok"] == true);

  RunResult nr = run("verify nr --size 4 --trials 3");
  CHECK(nr.exit_code == 0);
  json jnr = json::parse(nr.out);
  CHECK(jnr["expected_obstructions"] == 1);
}

TEST_CASE("show") {
  RunResult text = run("show --text " + data("divisor_6.json"));
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("component 0") != std::string::npos);
  CHECK(text.out.find("|6|=6") != std::string::npos);

  RunResult js = run("show " + data("divisor_6.json"));
  CHECK(js.exit_code == 0);
  json j = json::parse(js.out);
  CHECK(j["elements"] == 4);
  CHECK(j["hasse"].is_string());
}

TEST_CASE("universal: fold transfer prints the sum polynomials") {
  RunResult r = run("universal " + data("fold12_map.json") + " transfer");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["kind"] == "transfer");
  REQUIRE(j["polynomials"].size() == 2);
  // the norm-2 output coordinate carries the degree-2 correction term
  std::string p2 = j["polynomials"]["2"];
  CHECK(p2.find("-") != std::string::npos);
}

TEST_CASE("workspace bundles") {
  RunResult v = run("validate " + data("workspace_bundle.json"));
  CHECK(v.exit_code == 0);
  json j = json::parse(v.out);
  CHECK(j["kind"] == "workspace");
  CHECK(j["posets"] == 2);
  CHECK(j["maps"] == 1);
  CHECK(j["vectors"] == 1);
  CHECK(j["bispans"] == 1);

  RunResult e = run("eval " + data("workspace_eval.json") + " " + data("vec_pair11.json"));
  REQUIRE(e.exit_code == 0);
  CHECK(json::parse(e.out)["coords"]["1"] == "2");
}

TEST_CASE("WITTKIT_MAX_ELEMS caps poset sizes") {
  RunResult capped = run("validate " + data("divisor_6.json") + " ", "WITTKIT_MAX_ELEMS=3");
  CHECK(capped.exit_code == 1);
  RunResult fine = run("validate " + data("divisor_6.json") + " ", "WITTKIT_MAX_ELEMS=4");
  CHECK(fine.exit_code == 0);
}

TEST_CASE("eval over a modular ring goes through universal polynomials") {
  RunResult r = run("eval " + data("word_norm2_13.json") + " " + data("vec_13_mod5.json"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["ring"]["kind"] == "Zmod");
  // the norm of (4,2) over Z is reduced mod 5 coordinatewise
  CHECK(j["coords"]["1"] == "4");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("verify bogus").exit_code == 2);
}
