#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wittkit/category.hpp"
#include "wittkit/maps.hpp"
#include "wittkit/poset.hpp"
#include "wittkit/verify.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

using nlohmann::json;

/// Named registry for documents that bundle several objects; {"ref": name}
/// nodes resolve against it.
struct Workspace {
  std::map<std::string, PosetPtr> posets;
  std::map<std::string, PosetMap> maps;
  std::map<std::string, WittVector> vectors;
  std::map<std::string, std::vector<MorphismLeg>> bispans;
};

json parse_json_text(const std::string& text);  // line/column on errors

PosetPtr parse_poset(const json& j, const Workspace* ws = nullptr);
PosetMap parse_map(const json& j, const Workspace* ws = nullptr);
struct ParsedVector {
  WittVector vector;
  bool ghost_coordinates = false;
};
ParsedVector parse_vector(const json& j, const Workspace* ws = nullptr);
std::vector<MorphismLeg> parse_word(const json& j, const Workspace* ws = nullptr);
Workspace parse_workspace(const json& j);

json poset_to_json(const TruncationPoset& p);
json map_to_json(const PosetMap& m);
json vector_to_json(const WittVector& v);
json ghost_to_json(const GhostVector& v);
json suite_report_to_json(const SuiteReport& r);
json law_report_to_json(const LawReport& r);
json universal_to_json(const UniversalFormula& f);

// validation report for any recognized document kind; never throws on
// validation failures (only on parse-level problems)
json validate_any(const json& j);

}  // namespace wittkit
