#include "wittkit/json_io.hpp"

#include <algorithm>
#include <sstream>

#include "wittkit/error.hpp"

namespace wittkit {

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // convert the byte offset into a line/column pair
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail_parse("json parse error at line " + std::to_string(line) + ", column " +
               std::to_string(col) + ": " + e.what());
  }
}

namespace {

[[noreturn]] void bad(const std::string& what) { fail_parse(what); }

int64_t get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int64_t>();
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

PosetPtr parse_poset(const json& j, const Workspace* ws) {
  if (!j.is_object()) bad("poset must be a json object");
  if (j.contains("ref")) {
    std::string name = require(j, "ref").get<std::string>();
    if (!ws) bad("poset ref '" + name + "' outside a workspace");
    auto it = ws->posets.find(name);
    if (it == ws->posets.end()) bad("unresolved poset ref '" + name + "'");
    return it->second;
  }
  if (j.contains("divisors_of"))
    return std::make_shared<const TruncationPoset>(
        TruncationPoset::divisor_poset(get_int(j["divisors_of"], "divisors_of")));
  if (j.contains("set")) {
    std::vector<int64_t> vals;
    for (const auto& v : require(j, "set")) vals.push_back(get_int(v, "set member"));
    return std::make_shared<const TruncationPoset>(TruncationPoset::from_set(vals));
  }
  if (j.contains("gcd_tuples")) {
    std::vector<std::vector<int64_t>> tuples;
    for (const auto& t : require(j, "gcd_tuples")) {
      std::vector<int64_t> tuple;
      for (const auto& v : t) tuple.push_back(get_int(v, "tuple entry"));
      tuples.push_back(std::move(tuple));
    }
    std::optional<std::vector<int64_t>> weights;
    if (j.contains("weights")) {
      weights.emplace();
      for (const auto& v : j["weights"]) weights->push_back(get_int(v, "weight"));
    }
    return std::make_shared<const TruncationPoset>(
        TruncationPoset::gcd_poset(std::move(tuples), std::move(weights)));
  }
  if (j.contains("words")) {
    std::vector<std::string> words;
    for (const auto& w : require(j, "words")) words.push_back(w.get<std::string>());
    int letters = static_cast<int>(get_int(require(j, "letters"), "letters"));
    int block = j.contains("block") ? static_cast<int>(get_int(j["block"], "block")) : 1;
    return std::make_shared<const TruncationPoset>(
        TruncationPoset::word_poset(std::move(words), letters, block));
  }
  if (j.contains("coproduct")) {
    const json& parts = require(j, "coproduct");
    if (!parts.is_array() || parts.size() != 2)
      bad("coproduct expects two posets");
    PosetPtr p = parse_poset(parts[0], ws);
    PosetPtr q = parse_poset(parts[1], ws);
    return std::make_shared<const TruncationPoset>(
        std::move(TruncationPoset::coproduct(*p, *q).poset));
  }
  if (j.contains("elements")) {
    RawPoset raw;
    for (const auto& e : require(j, "elements")) {
      ElementInfo info;
      info.id = get_int(require(e, "id"), "element id");
      info.norm = get_int(require(e, "norm"), "element norm");
      if (e.contains("label")) info.label = e["label"].get<std::string>();
      raw.elements.push_back(std::move(info));
    }
    if (j.contains("divides"))
      for (const auto& pr : j["divides"]) {
        if (!pr.is_array() || pr.size() != 2) bad("divides entries are [a, b] pairs");
        raw.divides.emplace_back(get_int(pr[0], "divides"), get_int(pr[1], "divides"));
      }
    return TruncationPoset::validate_shared(std::move(raw));
  }
  bad("unrecognized poset form");
}

PosetMap parse_map(const json& j, const Workspace* ws) {
  if (!j.is_object()) bad("map must be a json object");
  if (j.contains("ref")) {
    std::string name = require(j, "ref").get<std::string>();
    if (!ws) bad("map ref '" + name + "' outside a workspace");
    auto it = ws->maps.find(name);
    if (it == ws->maps.end()) bad("unresolved map ref '" + name + "'");
    return it->second;
  }
  if (j.contains("fold")) return PosetMap::fold(parse_poset(j["fold"], ws));
  if (j.contains("inclusion")) {
    const json& pair = require(j, "inclusion");
    if (!pair.is_array() || pair.size() != 2) bad("inclusion expects [sub, super]");
    return PosetMap::inclusion(parse_poset(pair[0], ws), parse_poset(pair[1], ws));
  }
  if (j.contains("mult")) {
    const json& m = require(j, "mult");
    PosetPtr p = parse_poset(require(m, "poset"), ws);
    int64_t n = get_int(require(m, "n"), "mult n");
    std::string variant = m.contains("variant") ? m["variant"].get<std::string>() : "into";
    if (variant == "into") return PosetMap::mult_into(std::move(p), n);
    if (variant == "from_quotient") return PosetMap::mult_from_quotient(std::move(p), n);
    bad("mult variant must be 'into' or 'from_quotient'");
  }
  if (j.contains("identity")) return PosetMap::identity(parse_poset(j["identity"], ws));
  PosetPtr src = parse_poset(require(j, "source"), ws);
  PosetPtr tgt = parse_poset(require(j, "target"), ws);
  std::vector<Elem> assign(src->size(), -1);
  for (const auto& pr : require(j, "assign")) {
    if (!pr.is_array() || pr.size() != 2) bad("assign entries are [src_id, tgt_id]");
    auto s = src->index_of_id(get_int(pr[0], "assign"));
    auto t = tgt->index_of_id(get_int(pr[1], "assign"));
    if (!s) bad("assign references unknown source id");
    if (!t) bad("assign references unknown target id");
    assign[*s] = *t;
  }
  for (Elem e : assign)
    if (e < 0) bad("assign does not cover every source element");
  return PosetMap::make(std::move(src), std::move(tgt), std::move(assign));
}

namespace {

RingPtr parse_ring(const json& j) {
  std::string kind = require(j, "kind").get<std::string>();
  if (kind == "Z") return RingHandle::integers();
  if (kind == "Zmod") return RingHandle::modular(BigInt(get_int(require(j, "m"), "m")));
  if (kind == "Poly") {
    std::vector<std::string> vars;
    for (const auto& v : require(j, "vars")) vars.push_back(v.get<std::string>());
    return RingHandle::poly(std::move(vars));
  }
  bad("ring kind must be Z, Zmod or Poly");
}

json ring_to_json(const RingHandle& r) {
  json j;
  switch (r.kind()) {
    case RingKind::Integers: j["kind"] = "Z"; break;
    case RingKind::Modular:
      j["kind"] = "Zmod";
      j["m"] = std::stoll(r.modulus().get_str());
      break;
    case RingKind::Poly:
      j["kind"] = "Poly";
      j["vars"] = r.vars();
      break;
  }
  return j;
}

}  // namespace

ParsedVector parse_vector(const json& j, const Workspace* ws) {
  if (j.contains("ref")) {
    std::string name = require(j, "ref").get<std::string>();
    if (!ws) bad("vector ref '" + name + "' outside a workspace");
    auto it = ws->vectors.find(name);
    if (it == ws->vectors.end()) bad("unresolved vector ref '" + name + "'");
    return ParsedVector{it->second, false};
  }
  PosetPtr p = parse_poset(require(j, "poset"), ws);
  RingPtr ring = parse_ring(require(j, "ring"));
  const json& coords = require(j, "coords");
  std::vector<RingElement> cs(p->size(), RingElement::zero(ring));
  std::vector<bool> seen(p->size(), false);
  for (auto it = coords.begin(); it != coords.end(); ++it) {
    int64_t id;
    try {
      id = std::stoll(it.key());
    } catch (...) {
      bad("coordinate keys must be element ids");
    }
    auto e = p->index_of_id(id);
    if (!e) bad("coordinate references unknown element id " + it.key());
    cs[*e] = RingElement::parse(ring, it.value().get<std::string>());
    seen[*e] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) bad("coordinate missing for element id " + std::to_string(p->id(static_cast<Elem>(i))));
  bool ghost = j.contains("coordinates") && j["coordinates"] == "ghost";
  return ParsedVector{WittVector::make(std::move(p), std::move(ring), std::move(cs)),
                      ghost};
}

std::vector<MorphismLeg> parse_word(const json& j, const Workspace* ws) {
  if (j.contains("ref")) {
    std::string name = require(j, "ref").get<std::string>();
    if (!ws) bad("bispan ref '" + name + "' outside a workspace");
    auto it = ws->bispans.find(name);
    if (it == ws->bispans.end()) bad("unresolved bispan ref '" + name + "'");
    return it->second;
  }
  std::vector<MorphismLeg> word;
  for (const auto& leg : require(j, "legs")) {
    std::string kind = require(leg, "kind").get<std::string>();
    OpKind k;
    if (kind == "R")
      k = OpKind::Pull;
    else if (kind == "T")
      k = OpKind::Transfer;
    else if (kind == "N")
      k = OpKind::Norm;
    else
      bad("leg kind must be R, N or T");
    word.push_back({k, parse_map(require(leg, "map"), ws)});
  }
  return word;
}

Workspace parse_workspace(const json& j) {
  Workspace ws;
  auto unique = [](bool inserted, const std::string& name) {
    if (!inserted) bad("duplicate workspace name '" + name + "'");
  };
  if (j.contains("posets"))
    for (auto it = j["posets"].begin(); it != j["posets"].end(); ++it)
      unique(ws.posets.emplace(it.key(), parse_poset(it.value(), &ws)).second, it.key());
  if (j.contains("maps"))
    for (auto it = j["maps"].begin(); it != j["maps"].end(); ++it)
      unique(ws.maps.emplace(it.key(), parse_map(it.value(), &ws)).second, it.key());
  if (j.contains("vectors"))
    for (auto it = j["vectors"].begin(); it != j["vectors"].end(); ++it)
      unique(ws.vectors.emplace(it.key(), parse_vector(it.value(), &ws).vector).second,
             it.key());
  if (j.contains("bispans"))
    for (auto it = j["bispans"].begin(); it != j["bispans"].end(); ++it)
      unique(ws.bispans.emplace(it.key(), parse_word(it.value(), &ws)).second, it.key());
  return ws;
}

json poset_to_json(const TruncationPoset& p) {
  json elements = json::array();
  for (Elem e = 0; e < static_cast<Elem>(p.size()); ++e)
    elements.push_back({{"id", p.id(e)}, {"norm", p.norm(e)}, {"label", p.label(e)}});
  json divides = json::array();
  for (Elem e = 0; e < static_cast<Elem>(p.size()); ++e)
    for (Elem c : p.covers(e)) divides.push_back({p.id(e), p.id(c)});
  return json{{"elements", elements}, {"divides", divides}};
}

json map_to_json(const PosetMap& m) {
  json assign = json::array();
  for (Elem s = 0; s < static_cast<Elem>(m.source()->size()); ++s)
    assign.push_back({m.source()->id(s), m.target()->id(m(s))});
  return json{{"source", poset_to_json(*m.source())},
              {"target", poset_to_json(*m.target())},
              {"assign", assign},
              {"is_t", m.is_t()},
              {"is_n", m.is_n()}};
}

namespace {

json coords_to_json(const TruncationPoset& p, const std::vector<RingElement>& coords) {
  json out = json::object();
  for (Elem e = 0; e < static_cast<Elem>(p.size()); ++e)
    out[std::to_string(p.id(e))] = coords[e].to_text();
  return out;
}

}  // namespace

json vector_to_json(const WittVector& v) {
  return json{{"poset", poset_to_json(*v.poset)},
              {"ring", ring_to_json(*v.ring)},
              {"coordinates", "witt"},
              {"coords", coords_to_json(*v.poset, v.coords)}};
}

json ghost_to_json(const GhostVector& v) {
  return json{{"poset", poset_to_json(*v.poset)},
              {"ring", ring_to_json(*v.ring)},
              {"coordinates", "ghost"},
              {"coords", coords_to_json(*v.poset, v.coords)}};
}

json suite_report_to_json(const SuiteReport& r) {
  return json{{"suite", r.suite},
              {"seed", r.seed},
              {"size", r.size},
              {"trials", r.trials},
              {"passed", r.passed},
              {"failed", r.failed},
              {"expected_obstructions", r.expected_obstructions},
              {"first_counterexample", r.first_counterexample},
              {"ok", r.ok()}};
}

json law_report_to_json(const LawReport& r) {
  return json{{"diagram", r.diagram},
              {"ok", r.ok},
              {"counterexample", r.counterexample},
              {"diffs", r.diffs}};
}

json universal_to_json(const UniversalFormula& f) {
  json polys = json::object();
  for (Elem e = 0; e < static_cast<Elem>(f.output->size()); ++e)
    polys[std::to_string(f.output->id(e))] = f.polys[e].to_text();
  json vars = json::object();
  for (Elem e = 0; e < static_cast<Elem>(f.input->size()); ++e)
    vars[std::to_string(f.input->id(e))] = f.poly_ring->vars()[static_cast<size_t>(e)];
  return json{{"kind", op_kind_name(f.kind)},
              {"map", map_to_json(f.map)},
              {"variables", vars},
              {"polynomials", polys}};
}

json validate_any(const json& j) {
  std::string kind = "poset";
  if (j.contains("assign") || j.contains("fold") || j.contains("inclusion") ||
      j.contains("mult") || j.contains("identity"))
    kind = "map";
  else if (j.contains("coords"))
    kind = "vector";
  else if (j.contains("legs"))
    kind = "word";
  else if (j.contains("posets") || j.contains("maps") || j.contains("vectors") ||
           j.contains("bispans"))
    kind = "workspace";

  json report{{"kind", kind}, {"valid", true}};
  try {
    if (kind == "poset") {
      PosetPtr p = parse_poset(j);
      report["elements"] = p->size();
      report["components"] = p->component_count();
      report["has_joins"] = p->has_joins();
    } else if (kind == "map") {
      PosetMap m = parse_map(j);
      report["is_t"] = m.is_t();
      report["is_n"] = m.is_n();
    } else if (kind == "vector") {
      parse_vector(j);
    } else if (kind == "word") {
      parse_word(j);
    } else {
      Workspace ws = parse_workspace(j);
      report["posets"] = ws.posets.size();
      report["maps"] = ws.maps.size();
      report["vectors"] = ws.vectors.size();
      report["bispans"] = ws.bispans.size();
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    report["valid"] = false;
    report["error"] = e.what();
  }
  return report;
}

}  // namespace wittkit
