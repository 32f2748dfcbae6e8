// wittkit command line: validate, eval, verify, show, universal.
// Exit codes: 0 ok, 1 validation failure, 2 parse/usage error, 3 internal.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wittkit.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open file: " << path << "\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int status_to_exit(wk_status s) {
  switch (s) {
    case WK_OK: return 0;
    case WK_ERR_VALIDATION: return 1;
    case WK_ERR_PARSE: return 2;
    case WK_ERR_ARGUMENT: return 2;
    case WK_ERR_INTERNAL: return 3;
  }
  return 3;
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { wk_string_free(s); }
};

int finish(wk_status rc, const OwnedString& out, bool print_error_to_stderr = true) {
  if (out.s) std::cout << out.s << "\n";
  if (rc != WK_OK && print_error_to_stderr) std::cerr << wk_last_error() << "\n";
  return status_to_exit(rc);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("WITTKIT_MAX_ELEMS"))
    wk_set_max_elements(std::strtoll(cap, nullptr, 10));

  CLI::App app{"Witt vectors over truncation posets"};
  app.require_subcommand(1);

  std::string path, vector_path, kind = "transfer", suite;
  bool ghost_out = false, text_out = false;
  uint64_t seed = 0;
  int32_t size = 5, trials = 0;

  auto* validate = app.add_subcommand("validate", "validate a poset/map/vector file");
  validate->add_option("file", path, "json document")->required();

  auto* eval = app.add_subcommand("eval", "apply a morphism word to a vector");
  eval->add_option("word", path, "morphism word file (legs)")->required();
  eval->add_option("vector", vector_path, "vector file")->required();
  eval->add_flag("--ghost", ghost_out, "print ghost coordinates");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "rt | nr | tn | bispan | dwork | roundtrip")
      ->required();
  verify->add_option("--seed", seed, "rng seed (default 0)");
  verify->add_option("--size", size, "poset size bound (default 5)");
  verify->add_option("--trials", trials, "trial count (0 = suite default)");

  auto* show = app.add_subcommand("show", "pretty-print a poset's Hasse diagram");
  show->add_option("file", path, "poset file")->required();
  show->add_flag("--text", text_out, "plain text instead of json");

  auto* universal_cmd =
      app.add_subcommand("universal", "print universal polynomials for a map");
  universal_cmd->add_option("map", path, "map file")->required();
  universal_cmd->add_option("kind", kind, "pull | transfer | norm")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  if (validate->parsed()) {
    OwnedString out;
    wk_status rc = wk_validate_document(read_file(path).c_str(), &out.s);
    // the report itself carries the failure detail
    return finish(rc, out, /*print_error_to_stderr=*/out.s == nullptr);
  }

  if (eval->parsed()) {
    OwnedString out;
    wk_status rc = wk_eval_document(read_file(path).c_str(),
                                    read_file(vector_path).c_str(),
                                    ghost_out ? 1 : 0, &out.s);
    return finish(rc, out);
  }

  if (verify->parsed()) {
    OwnedString out;
    wk_status rc = wk_verify_suite(suite.c_str(), seed, size, trials, &out.s);
    return finish(rc, out, /*print_error_to_stderr=*/out.s == nullptr);
  }

  if (show->parsed()) {
    std::string doc = read_file(path);
    if (text_out) {
      OwnedString out;
      wk_status rc = wk_show_document(doc.c_str(), &out.s);
      if (out.s) std::cout << out.s;
      if (rc != WK_OK) std::cerr << wk_last_error() << "\n";
      return status_to_exit(rc);
    }
    wk_poset* p = nullptr;
    wk_status rc = wk_poset_parse(doc.c_str(), &p);
    if (rc != WK_OK) {
      std::cerr << wk_last_error() << "\n";
      return status_to_exit(rc);
    }
    OwnedString hasse;
    wk_poset_show(p, &hasse.s);
    int joins = 0;
    wk_poset_has_joins(p, &joins);
    int64_t comps = 0;
    wk_poset_component_count(p, &comps);
    nlohmann::json out{{"elements", wk_poset_size(p)},
                       {"components", comps},
                       {"has_joins", joins != 0},
                       {"hasse", hasse.s ? hasse.s : ""}};
    std::cout << out.dump(2) << "\n";
    wk_poset_free(p);
    return 0;
  }

  if (universal_cmd->parsed()) {
    OwnedString out;
    wk_status rc =
        wk_universal_document(read_file(path).c_str(), kind.c_str(), &out.s);
    return finish(rc, out);
  }

  return 2;
}
