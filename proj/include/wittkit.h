/* wittkit C API: Witt vectors over truncation posets.
 *
 * All functions return wk_status; WK_OK is 0. On failure, wk_last_error()
 * describes the problem (thread-local). Strings returned through char**
 * parameters are heap-allocated and must be released with wk_string_free().
 * Objects are opaque handles released with their matching *_free function.
 *
 * Structured payloads cross this boundary as JSON documents; the schemas
 * match the file formats accepted by the wittkit CLI.
 */
#ifndef WITTKIT_H
#define WITTKIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wk_status {
  WK_OK = 0,
  WK_ERR_VALIDATION = 1,
  WK_ERR_PARSE = 2,
  WK_ERR_INTERNAL = 3,
  WK_ERR_ARGUMENT = 4
} wk_status;

typedef struct wk_poset wk_poset;
typedef struct wk_map wk_map;
typedef struct wk_vector wk_vector; /* Witt or ghost coordinates */

const char* wk_version(void);
const char* wk_last_error(void);
void wk_string_free(char* s);

/* overrides the poset size cap (the WITTKIT_MAX_ELEMS environment variable
 * is read by the CLI and routed through this) */
void wk_set_max_elements(int64_t cap);

/* ---- posets ---- */
wk_status wk_poset_parse(const char* json, wk_poset** out);
wk_status wk_poset_to_json(const wk_poset* p, char** out);
wk_status wk_poset_show(const wk_poset* p, char** out_text);
int64_t wk_poset_size(const wk_poset* p);
wk_status wk_poset_has_joins(const wk_poset* p, int* out);
wk_status wk_poset_component_count(const wk_poset* p, int64_t* out);
void wk_poset_free(wk_poset* p);

/* ---- maps ---- */
wk_status wk_map_parse(const char* json, wk_map** out);
wk_status wk_map_to_json(const wk_map* m, char** out);
/* is_r is always 1 for a parsed map; present for symmetry */
wk_status wk_map_classify(const wk_map* m, int* is_r, int* is_t, int* is_n);
void wk_map_free(wk_map* m);

/* ---- vectors ---- */
wk_status wk_vector_parse(const char* json, wk_vector** out);
wk_status wk_vector_to_json(const wk_vector* v, char** out);
void wk_vector_free(wk_vector* v);

/* ---- operations ---- */
wk_status wk_ghost(const wk_vector* v, wk_vector** out);
wk_status wk_unghost(const wk_vector* g, wk_vector** out);
/* report: {"ok": bool, "prime"?: p, "element"?: label, "detail"?: text} */
wk_status wk_dwork_check(const wk_vector* g, char** report_json);
/* kind: "pull" | "transfer" | "norm" */
wk_status wk_apply(const wk_map* f, const char* kind, const wk_vector* v,
                   wk_vector** out);

/* ---- document-level entry points (what the CLI calls) ---- */
/* validation report for a poset/map/vector/word/workspace document */
wk_status wk_validate_document(const char* json, char** report_json);
/* evaluate a morphism word on a vector document; ghost_output selects ghost
 * coordinates for the result */
wk_status wk_eval_document(const char* word_json, const char* vector_json,
                           int ghost_output, char** out_json);
/* universal Witt-coordinate polynomials for a map and operation kind */
wk_status wk_universal_document(const char* map_json, const char* kind,
                                char** out_json);
/* run a named property suite: rt | nr | tn | bispan | dwork | roundtrip */
wk_status wk_verify_suite(const char* suite, uint64_t seed, int32_t size,
                          int32_t trials, char** report_json);
/* pretty-print the Hasse diagram of a poset document */
wk_status wk_show_document(const char* poset_json, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* WITTKIT_H */
