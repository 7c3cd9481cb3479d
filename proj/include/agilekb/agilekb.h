/* agilekb C API.
 *
 * All functions return an akb_status. On failure akb_last_error() describes
 * the error of the most recent call on the calling thread and
 * akb_last_error_detail() lists per-item diagnostics (one schema violation,
 * one bad profile entry, ...). Strings returned through char** out-parameters
 * are NUL-terminated UTF-8 and must be released with akb_free().
 *
 * An akb_kb handle may be shared by threads once opened; an akb_server must
 * be driven from one thread, except akb_server_stop().
 */
#ifndef AGILEKB_AGILEKB_H
#define AGILEKB_AGILEKB_H

#include <stddef.h>

#if defined(AGILEKB_BUILDING_LIBRARY)
#define AKB_API __attribute__((visibility("default")))
#else
#define AKB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum akb_status {
  AKB_OK = 0,
  AKB_ERR_MALFORMED_TERM,
  AKB_ERR_SYNTAX,
  AKB_ERR_UNKNOWN_PREFIX,
  AKB_ERR_UNSAFE_RULE,
  AKB_ERR_DUPLICATE_RULE,
  AKB_ERR_UNBOUND_VARIABLE,
  AKB_ERR_STALE_OVERLAY,
  AKB_ERR_RESOURCE_LIMIT,
  AKB_ERR_NOT_FOUND,
  AKB_ERR_SCHEMA_VIOLATION,
  AKB_ERR_CYCLE,
  AKB_ERR_DUPLICATE_CONCERN,
  AKB_ERR_UNKNOWN_CONCERN,
  AKB_ERR_MISSING_PARAMETER,
  AKB_ERR_INVALID_PARAMETER,
  AKB_ERR_INVALID_PROFILE,
  AKB_ERR_IO,
  AKB_ERR_INTERNAL,
  AKB_ERR_INVALID_ARGUMENT /* NULL handle or out-parameter */
} akb_status;

typedef struct akb_kb akb_kb;
typedef struct akb_server akb_server;

/* NULL paths fall back to the shipped layout under data_dir
 * (schema.ttl, seed.ttl, rules/default.rules, concerns.toml, goals.ttl,
 * factors.ttl). An empty string disables goals/factors/cache_dir.
 * cache_dir NULL or "" keeps the result cache in memory. */
typedef struct akb_kb_config {
  const char* data_dir;
  const char* schema_path;
  const char* ontology_path;
  const char* rules_path;
  const char* concerns_path;
  const char* goals_path;
  const char* factors_path;
  const char* cache_dir;
  size_t max_derived; /* 0: default (1000000) */
} akb_kb_config;

typedef void (*akb_log_fn)(const char* line, void* user);

typedef struct akb_server_config {
  const char* host;       /* NULL: 127.0.0.1 */
  int port;               /* 0: any free port */
  const char* static_dir; /* NULL or "": no static files */
  size_t threads;         /* 0: 8 */
  size_t max_concurrent_recommendations; /* 0: 8 */
  akb_log_fn access_log;  /* NULL: stderr */
  void* access_log_user;
} akb_server_config;

AKB_API const char* akb_status_name(akb_status status);
AKB_API const char* akb_last_error(void);
AKB_API size_t akb_last_error_detail_count(void);
AKB_API const char* akb_last_error_detail(size_t index);
AKB_API void akb_free(void* p);

/* Loads, saturates and validates. */
AKB_API akb_status akb_kb_open(const akb_kb_config* config, akb_kb** out);
AKB_API void akb_kb_close(akb_kb* kb);

/* JSON array of concern descriptors. */
AKB_API akb_status akb_kb_concerns(akb_kb* kb, char** out_json);
/* JSON {goals, factors}. */
AKB_API akb_status akb_kb_catalog(akb_kb* kb, char** out_json);
/* JSON table. practice may be NULL. */
AKB_API akb_status akb_kb_answer(akb_kb* kb, const char* concern_id, const char* practice, char** out_json);
/* profile_json: {"goals": [iri], "situations": {factorId: valueIri}}; returns the report. */
AKB_API akb_status akb_kb_recommend(akb_kb* kb, const char* profile_json, char** out_json);
/* Ad-hoc query over the saturated store; JSON table. */
AKB_API akb_status akb_kb_query(akb_kb* kb, const char* sparql, char** out_json);
AKB_API akb_status akb_kb_warm_cache(akb_kb* kb, size_t* out_count);
/* JSON {asserted, derived, rounds, rules, concerns, cacheHits, evaluations, ontologyHash}. */
AKB_API akb_status akb_kb_stats(akb_kb* kb, char** out_json);
/* Hash of the current store, asserted and derived statements. */
AKB_API akb_status akb_kb_content_hash(akb_kb* kb, char** out_hex);
/* <iri>, prefix:local, absolute IRI or bare local name -> absolute IRI. */
AKB_API akb_status akb_kb_resolve_iri(akb_kb* kb, const char* text, char** out_iri);

/* Absolute IRI -> prefix:local using the ontology prefixes, else <iri>. */
AKB_API akb_status akb_kb_compact_iri(akb_kb* kb, const char* iri, char** out_text);

/* Runs one HTTP API request without a socket. query is the raw query string
 * (no '?'), body may be NULL. */
AKB_API akb_status akb_api_handle(akb_kb* kb, const char* method, const char* path, const char* query,
                                  const char* body, int* out_status, char** out_body);

AKB_API akb_status akb_server_create(akb_kb* kb, const akb_server_config* config, akb_server** out);
/* Binds the listening socket; AKB_ERR_IO when the address is taken. */
AKB_API akb_status akb_server_bind(akb_server* server, int* out_port);
/* Serves until akb_server_stop(). */
AKB_API akb_status akb_server_run(akb_server* server);
AKB_API void akb_server_stop(akb_server* server);
AKB_API void akb_server_destroy(akb_server* server);

#ifdef __cplusplus
}
#endif

#endif
