#include "wittkit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "wittkit/config.hpp"
#include "wittkit/error.hpp"
#include "wittkit/json_io.hpp"

using namespace wittkit;

struct wk_poset {
  PosetPtr p;
};
struct wk_map {
  PosetMap m;
};
struct wk_vector {
  WittVector v;
  bool ghost_coordinates;
};

namespace {

thread_local std::string g_last_error;

wk_status set_error(const Error& e) {
  g_last_error = e.what();
  switch (e.kind()) {
    case ErrorKind::Validation: return WK_ERR_VALIDATION;
    case ErrorKind::Parse: return WK_ERR_PARSE;
    case ErrorKind::Internal: return WK_ERR_INTERNAL;
    case ErrorKind::Argument: return WK_ERR_ARGUMENT;
  }
  return WK_ERR_INTERNAL;
}

wk_status set_error(const std::exception& e) {
  g_last_error = e.what();
  return WK_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
wk_status guarded(Fn&& fn) {
  try {
    fn();
    return WK_OK;
  } catch (const Error& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

wk_status require_args(bool ok) {
  if (!ok) {
    g_last_error = "null argument";
    return WK_ERR_ARGUMENT;
  }
  return WK_OK;
}

}  // namespace

extern "C" {

const char* wk_version(void) { return "wittkit 0.1.0"; }

const char* wk_last_error(void) { return g_last_error.c_str(); }

void wk_string_free(char* s) { std::free(s); }

void wk_set_max_elements(int64_t cap) {
  if (cap > 0) limits().max_poset_elements = cap;
}

/* ---- posets ---- */

wk_status wk_poset_parse(const char* text, wk_poset** out) {
  if (wk_status s = require_args(text && out)) return s;
  return guarded([&] { *out = new wk_poset{parse_poset(parse_json_text(text))}; });
}

wk_status wk_poset_to_json(const wk_poset* p, char** out) {
  if (wk_status s = require_args(p && out)) return s;
  return guarded([&] { *out = dup_string(poset_to_json(*p->p).dump(2)); });
}

wk_status wk_poset_show(const wk_poset* p, char** out_text) {
  if (wk_status s = require_args(p && out_text)) return s;
  return guarded([&] { *out_text = dup_string(p->p->show_hasse()); });
}

int64_t wk_poset_size(const wk_poset* p) {
  return p ? static_cast<int64_t>(p->p->size()) : -1;
}

wk_status wk_poset_has_joins(const wk_poset* p, int* out) {
  if (wk_status s = require_args(p && out)) return s;
  return guarded([&] { *out = p->p->has_joins() ? 1 : 0; });
}

wk_status wk_poset_component_count(const wk_poset* p, int64_t* out) {
  if (wk_status s = require_args(p && out)) return s;
  return guarded([&] { *out = static_cast<int64_t>(p->p->component_count()); });
}

void wk_poset_free(wk_poset* p) { delete p; }

/* ---- maps ---- */

wk_status wk_map_parse(const char* text, wk_map** out) {
  if (wk_status s = require_args(text && out)) return s;
  return guarded([&] { *out = new wk_map{parse_map(parse_json_text(text))}; });
}

wk_status wk_map_to_json(const wk_map* m, char** out) {
  if (wk_status s = require_args(m && out)) return s;
  return guarded([&] { *out = dup_string(map_to_json(m->m).dump(2)); });
}

wk_status wk_map_classify(const wk_map* m, int* is_r, int* is_t, int* is_n) {
  if (wk_status s = require_args(m != nullptr)) return s;
  if (is_r) *is_r = 1;
  if (is_t) *is_t = m->m.is_t() ? 1 : 0;
  if (is_n) *is_n = m->m.is_n() ? 1 : 0;
  return WK_OK;
}

void wk_map_free(wk_map* m) { delete m; }

/* ---- vectors ---- */

wk_status wk_vector_parse(const char* text, wk_vector** out) {
  if (wk_status s = require_args(text && out)) return s;
  return guarded([&] {
    ParsedVector pv = parse_vector(parse_json_text(text));
    *out = new wk_vector{std::move(pv.vector), pv.ghost_coordinates};
  });
}

wk_status wk_vector_to_json(const wk_vector* v, char** out) {
  if (wk_status s = require_args(v && out)) return s;
  return guarded([&] {
    if (v->ghost_coordinates) {
      GhostVector g{v->v.poset, v->v.ring, v->v.coords};
      *out = dup_string(ghost_to_json(g).dump(2));
    } else {
      *out = dup_string(vector_to_json(v->v).dump(2));
    }
  });
}

void wk_vector_free(wk_vector* v) { delete v; }

/* ---- operations ---- */

wk_status wk_ghost(const wk_vector* v, wk_vector** out) {
  if (wk_status s = require_args(v && out)) return s;
  return guarded([&] {
    if (v->ghost_coordinates) fail_argument("vector is already in ghost coordinates");
    GhostVector g = ghost(v->v);
    *out = new wk_vector{WittVector{g.poset, g.ring, std::move(g.coords)}, true};
  });
}

wk_status wk_unghost(const wk_vector* g, wk_vector** out) {
  if (wk_status s = require_args(g && out)) return s;
  return guarded([&] {
    if (!g->ghost_coordinates) fail_argument("vector is not in ghost coordinates");
    GhostVector gv{g->v.poset, g->v.ring, g->v.coords};
    *out = new wk_vector{unghost(gv), false};
  });
}

wk_status wk_dwork_check(const wk_vector* g, char** report_json) {
  if (wk_status s = require_args(g && report_json)) return s;
  return guarded([&] {
    if (!g->ghost_coordinates) fail_argument("dwork check expects ghost coordinates");
    GhostVector gv{g->v.poset, g->v.ring, g->v.coords};
    DworkReport r = dwork_check(gv);
    json j{{"ok", r.ok}};
    if (!r.ok) {
      j["prime"] = r.prime;
      j["element"] = gv.poset->label(r.element);
      j["detail"] = r.detail;
    }
    *report_json = dup_string(j.dump(2));
  });
}

wk_status wk_apply(const wk_map* f, const char* kind, const wk_vector* v,
                   wk_vector** out) {
  if (wk_status s = require_args(f && kind && v && out)) return s;
  return guarded([&] {
    if (v->ghost_coordinates)
      fail_argument("apply expects Witt coordinates; unghost first");
    std::string k = kind;
    OpKind op;
    if (k == "pull")
      op = OpKind::Pull;
    else if (k == "transfer")
      op = OpKind::Transfer;
    else if (k == "norm")
      op = OpKind::Norm;
    else
      fail_argument("kind must be pull, transfer or norm");
    *out = new wk_vector{apply_op(f->m, op, v->v), false};
  });
}

/* ---- document-level entry points ---- */

wk_status wk_validate_document(const char* text, char** report_json) {
  if (wk_status s = require_args(text && report_json)) return s;
  wk_status rc = WK_OK;
  wk_status s = guarded([&] {
    json rep = validate_any(parse_json_text(text));
    *report_json = dup_string(rep.dump(2));
    if (!rep["valid"].get<bool>()) {
      g_last_error = rep.value("error", "invalid");
      rc = WK_ERR_VALIDATION;
    }
  });
  return s ? s : rc;
}

namespace {

// documents may carry their own named-object bundle for refs
Workspace workspace_of(const json& j) {
  if (j.contains("workspace")) return parse_workspace(j["workspace"]);
  return Workspace{};
}

}  // namespace

wk_status wk_eval_document(const char* word_json, const char* vector_json,
                           int ghost_output, char** out_json) {
  if (wk_status s = require_args(word_json && vector_json && out_json)) return s;
  return guarded([&] {
    json jw = parse_json_text(word_json);
    Workspace wsw = workspace_of(jw);
    auto word = parse_word(jw, &wsw);
    json jv = parse_json_text(vector_json);
    Workspace wsv = workspace_of(jv);
    ParsedVector pv = parse_vector(jv, &wsv);
    WittVector v = pv.ghost_coordinates
                       ? unghost(GhostVector{pv.vector.poset, pv.vector.ring,
                                             pv.vector.coords})
                       : pv.vector;
    WittVector result = evaluate_word(word, v);
    if (ghost_output)
      *out_json = dup_string(ghost_to_json(ghost(result)).dump(2));
    else
      *out_json = dup_string(vector_to_json(result).dump(2));
  });
}

wk_status wk_universal_document(const char* map_json, const char* kind,
                                char** out_json) {
  if (wk_status s = require_args(map_json && kind && out_json)) return s;
  return guarded([&] {
    json jm = parse_json_text(map_json);
    Workspace ws = workspace_of(jm);
    PosetMap m = jm.contains("map") ? parse_map(jm["map"], &ws) : parse_map(jm, &ws);
    std::string k = kind;
    OpKind op;
    if (k == "pull")
      op = OpKind::Pull;
    else if (k == "transfer")
      op = OpKind::Transfer;
    else if (k == "norm")
      op = OpKind::Norm;
    else
      fail_argument("kind must be pull, transfer or norm");
    auto formula = universal(m, op);
    *out_json = dup_string(universal_to_json(*formula).dump(2));
  });
}

wk_status wk_verify_suite(const char* suite, uint64_t seed, int32_t size,
                          int32_t trials, char** report_json) {
  if (wk_status s = require_args(suite && report_json)) return s;
  wk_status rc = WK_OK;
  wk_status s = guarded([&] {
    SuiteReport rep = run_suite(suite, seed, size, trials);
    *report_json = dup_string(suite_report_to_json(rep).dump(2));
    if (!rep.ok()) {
      g_last_error = rep.first_counterexample;
      rc = WK_ERR_VALIDATION;
    }
  });
  return s ? s : rc;
}

wk_status wk_show_document(const char* poset_json, char** out_text) {
  if (wk_status s = require_args(poset_json && out_text)) return s;
  return guarded([&] {
    PosetPtr p = parse_poset(parse_json_text(poset_json));
    *out_text = dup_string(p->show_hasse());
  });
}

}  // extern "C"
