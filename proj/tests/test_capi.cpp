// Exercises the shared-library C surface end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "wittkit.h"

using nlohmann::json;

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { wk_string_free(s); }
};

}  // namespace

TEST_CASE("poset handles") {
  wk_poset* p = nullptr;
  REQUIRE(wk_poset_parse(R"({"divisors_of": 6})", &p) == WK_OK);
  CHECK(wk_poset_size(p) == 4);
  int joins = -1;
  CHECK(wk_poset_has_joins(p, &joins) == WK_OK);
  CHECK(joins == 1);
  int64_t comps = 0;
  CHECK(wk_poset_component_count(p, &comps) == WK_OK);
  CHECK(comps == 1);

  Str out;
  REQUIRE(wk_poset_to_json(p, &out.s) == WK_OK);
  json j = json::parse(out.s);
  CHECK(j["elements"].size() == 4);

  Str hasse;
  REQUIRE(wk_poset_show(p, &hasse.s) == WK_OK);
  CHECK(std::string(hasse.s).find("component 0") != std::string::npos);
  wk_poset_free(p);

  wk_poset* bad = nullptr;
  CHECK(wk_poset_parse(R"({"set": [2, 4]})", &bad) == WK_ERR_VALIDATION);
  CHECK(std::string(wk_last_error()).find("not division closed") != std::string::npos);
  CHECK(wk_poset_parse("{", &bad) == WK_ERR_PARSE);
}

TEST_CASE("map handles and classification") {
  wk_map* m = nullptr;
  REQUIRE(wk_map_parse(
              R"({"mult": {"poset": {"set": [1, 3]}, "n": 2, "variant": "into"}})",
              &m) == WK_OK);
  int is_r = 0, is_t = 0, is_n = 0;
  CHECK(wk_map_classify(m, &is_r, &is_t, &is_n) == WK_OK);
  CHECK(is_r == 1);
  CHECK(is_t == 1);
  CHECK(is_n == 1);
  wk_map_free(m);

  wk_map* incl = nullptr;
  REQUIRE(wk_map_parse(
              R"({"inclusion": [{"set": [1, 3]}, {"divisors_of": 6}]})", &incl) ==
          WK_OK);
  CHECK(wk_map_classify(incl, &is_r, &is_t, &is_n) == WK_OK);
  CHECK(is_t == 0);
  CHECK(is_n == 0);
  wk_map_free(incl);
}

TEST_CASE("ghost, unghost, dwork and apply through the C API") {
  const char* vec = R"({
    "poset": {"set": [1, 2]},
    "ring": {"kind": "Z"},
    "coords": {"1": "1", "2": "1"}
  })";
  wk_vector* v = nullptr;
  REQUIRE(wk_vector_parse(vec, &v) == WK_OK);

  wk_vector* g = nullptr;
  REQUIRE(wk_ghost(v, &g) == WK_OK);
  Str gj;
  REQUIRE(wk_vector_to_json(g, &gj.s) == WK_OK);
  json jg = json::parse(gj.s);
  CHECK(jg["coordinates"] == "ghost");
  CHECK(jg["coords"]["1"] == "1");
  CHECK(jg["coords"]["2"] == "3");

  Str dwork;
  REQUIRE(wk_dwork_check(g, &dwork.s) == WK_OK);
  CHECK(json::parse(dwork.s)["ok"] == true);

  wk_vector* back = nullptr;
  REQUIRE(wk_unghost(g, &back) == WK_OK);
  Str bj;
  REQUIRE(wk_vector_to_json(back, &bj.s) == WK_OK);
  CHECK(json::parse(bj.s)["coords"]["2"] == "1");

  wk_map* fold = nullptr;
  REQUIRE(wk_map_parse(R"({"fold": {"set": [1, 2]}})", &fold) == WK_OK);
  Str foldj;
  REQUIRE(wk_map_to_json(fold, &foldj.s) == WK_OK);
  json jf = json::parse(foldj.s);

  // build the doubled vector over the fold source by id lookup
  json coords = json::object();
  for (const auto& e : jf["source"]["elements"])
    coords[std::to_string(e["id"].get<int64_t>())] = "1";
  json pair_doc{{"poset", jf["source"]},
                {"ring", {{"kind", "Z"}}},
                {"coords", coords}};
  wk_vector* pair = nullptr;
  REQUIRE(wk_vector_parse(pair_doc.dump().c_str(), &pair) == WK_OK);
  wk_vector* sum = nullptr;
  REQUIRE(wk_apply(fold, "transfer", pair, &sum) == WK_OK);
  Str sumj;
  REQUIRE(wk_vector_to_json(sum, &sumj.s) == WK_OK);
  CHECK(json::parse(sumj.s)["coords"]["1"] == "2");
  CHECK(json::parse(sumj.s)["coords"]["2"] == "1");

  CHECK(wk_apply(fold, "norm", g, &sum) == WK_ERR_ARGUMENT);  // ghost input

  wk_vector_free(v);
  wk_vector_free(g);
  wk_vector_free(back);
  wk_vector_free(pair);
  wk_vector_free(sum);
  wk_map_free(fold);
}

TEST_CASE("poset and vector json round-trips") {
  const char* posets[] = {
      R"({"divisors_of": 12})",
      R"({"gcd_tuples": [[1,2],[2,4],[3,6]]})",
      R"({"words": ["ab", "abab", "ba"], "letters": 2, "block": 1})",
      R"({"coproduct": [{"set": [1,2]}, {"divisors_of": 4}]})"};
  for (const char* doc : posets) {
    wk_poset* p = nullptr;
    REQUIRE(wk_poset_parse(doc, &p) == WK_OK);
    Str first;
    REQUIRE(wk_poset_to_json(p, &first.s) == WK_OK);
    wk_poset* q = nullptr;
    REQUIRE(wk_poset_parse(first.s, &q) == WK_OK);
    Str second;
    REQUIRE(wk_poset_to_json(q, &second.s) == WK_OK);
    CHECK(std::string(first.s) == second.s);
    wk_poset_free(p);
    wk_poset_free(q);
  }

  const char* vec = R"({
    "poset": {"set": [1, 2, 4]},
    "ring": {"kind": "Poly", "vars": ["a", "b"]},
    "coords": {"1": "a^2 + 2*b", "2": "-3", "4": "a*b - 1"}
  })";
  wk_vector* v = nullptr;
  REQUIRE(wk_vector_parse(vec, &v) == WK_OK);
  Str first;
  REQUIRE(wk_vector_to_json(v, &first.s) == WK_OK);
  wk_vector* w = nullptr;
  REQUIRE(wk_vector_parse(first.s, &w) == WK_OK);
  Str second;
  REQUIRE(wk_vector_to_json(w, &second.s) == WK_OK);
  CHECK(std::string(first.s) == second.s);
  wk_vector_free(v);
  wk_vector_free(w);
}

TEST_CASE("document entry points") {
  Str rep;
  CHECK(wk_validate_document(R"({"divisors_of": 12})", &rep.s) == WK_OK);
  CHECK(json::parse(rep.s)["valid"] == true);

  Str bad;
  CHECK(wk_validate_document(
            R"({"elements": [{"id": 3, "norm": 3}], "divides": []})", &bad.s) ==
        WK_ERR_VALIDATION);
  json jbad = json::parse(bad.s);
  CHECK(jbad["valid"] == false);
  CHECK(std::string(jbad["error"]).find("axiom 3") != std::string::npos);

  Str uni;
  REQUIRE(wk_universal_document(R"({"fold": {"set": [1, 2]}})", "transfer",
                                &uni.s) == WK_OK);
  json ju = json::parse(uni.s);
  CHECK(ju["polynomials"].size() == 2);

  Str eval;
  const char* word = R"({"legs": [{"kind": "T", "map": {"fold": {"set": [1]}}}]})";
  const char* vec = R"({
    "poset": {"coproduct": [{"set": [1]}, {"set": [1]}]},
    "ring": {"kind": "Z"},
    "coords": {"0": "2", "1": "3"}
  })";
  REQUIRE(wk_eval_document(word, vec, 0, &eval.s) == WK_OK);
  CHECK(json::parse(eval.s)["coords"]["1"] == "5");

  Str verify;
  CHECK(wk_verify_suite("dwork", 7, 4, 5, &verify.s) == WK_OK);
  json jv = json::parse(verify.s);
  CHECK(jv["ok"] == true);
  CHECK(jv["seed"] == 7);

  Str show;
  CHECK(wk_show_document(R"({"divisors_of": 4})", &show.s) == WK_OK);
  CHECK(std::string(show.s).find("|4|=4") != std::string::npos);

  CHECK(wk_verify_suite("bogus", 0, 4, 1, &rep.s) == WK_ERR_ARGUMENT);
}

TEST_CASE("malformed documents never crash the C boundary") {
  // deterministic junk generator
  uint64_t state = 12345;
  auto next = [&] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state;
  };
  const char* seeds[] = {
      R"({"divisors_of": 6})",
      R"({"elements": [{"id": 1, "norm": 1}], "divides": []})",
      R"({"set": [1,2,3]})",
      R"({"legs": [{"kind": "T", "map": {"fold": {"set": [1]}}}]})",
      R"({"poset": {"set": [1]}, "ring": {"kind": "Z"}, "coords": {"1": "1"}})"};
  for (const char* seed : seeds) {
    std::string doc = seed;
    for (int round = 0; round < 60; ++round) {
      std::string mutated = doc;
      size_t pos = next() % mutated.size();
      switch (next() % 3) {
        case 0: mutated[pos] = static_cast<char>(next() % 94 + 33); break;
        case 1: mutated.erase(pos, 1); break;
        default: mutated.insert(pos, 1, static_cast<char>(next() % 94 + 33)); break;
      }
      Str rep;
      wk_status rc = wk_validate_document(mutated.c_str(), &rep.s);
      CHECK((rc == WK_OK || rc == WK_ERR_VALIDATION || rc == WK_ERR_PARSE ||
             rc == WK_ERR_ARGUMENT));
    }
  }
}
