#ifndef QUADCHASE_QUADCHASE_H
#define QUADCHASE_QUADCHASE_H

/* C interface to the quadchase engine.
 *
 * Every fallible call returns a qc_status; on failure qc_last_error() gives
 * a message for the calling thread. Strings returned through `char**` are
 * owned by the caller and released with qc_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QUADCHASE_BUILDING)
#    define QC_API __declspec(dllexport)
#  else
#    define QC_API __declspec(dllimport)
#  endif
#else
#  define QC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
  QC_OK = 0,
  QC_ERR_INVALID_ARGUMENT = 1,
  QC_ERR_PARSE = 2,
  QC_ERR_INVALID_CONTEXT = 3,
  QC_ERR_IO = 4,
  QC_ERR_BUDGET_REQUIRED = 5,
  QC_ERR_NOT_CONTEXT_ACYCLIC = 6,
  QC_ERR_LIMIT_EXCEEDED = 7,
  QC_ERR_INTERNAL = 8
} qc_status;

typedef enum qc_chase_status {
  QC_CHASE_COMPLETE = 0,
  QC_CHASE_BUDGET_EXHAUSTED = 1,
  QC_CHASE_INCONSISTENT = 2
} qc_chase_status;

typedef enum qc_format { QC_FORMAT_TSV = 0, QC_FORMAT_JSON = 1 } qc_format;

typedef struct qc_system qc_system;
typedef struct qc_chase qc_chase;
typedef struct qc_query qc_query;

QC_API const char* qc_version(void);
QC_API const char* qc_last_error(void);
QC_API const char* qc_status_name(qc_status status);
QC_API void qc_string_free(char* s);

/* Quad-systems */

QC_API qc_status qc_system_new(qc_system** out);
QC_API void qc_system_free(qc_system* sys);
/* Adds the quads of an N-Quads file. `strict` rejects literal subjects and
 * non-IRI predicates. */
QC_API qc_status qc_system_load_quads(qc_system* sys, const char* path, int strict);
QC_API qc_status qc_system_add_quads_text(qc_system* sys, const char* text, int strict);
QC_API qc_status qc_system_load_rules(qc_system* sys, const char* path);
QC_API qc_status qc_system_add_rules_text(qc_system* sys, const char* text);
QC_API qc_status qc_system_counts(const qc_system* sys, size_t* quads, size_t* rules, size_t* contexts);
QC_API qc_status qc_system_rules_text(const qc_system* sys, char** out);

/* Context dependency graph */

QC_API qc_status qc_system_deps_json(const qc_system* sys, char** out);
QC_API qc_status qc_system_deps_dot(const qc_system* sys, char** out);
/* `*acyclic` gets the verdict; `report` (optional) a readable summary with
 * the TGCs, the witness cycle or the levels. */
QC_API qc_status qc_system_check(const qc_system* sys, int* acyclic, char** report);

/* Chase */

typedef struct qc_chase_options {
  const char* semantics; /* "simple" (default) or "rdfs-core" */
  int rdfs_resource_rule;
  /* Negative means unbounded. */
  long long max_iterations;
  long long max_quads;
  long long max_generating_iterations;
  int force;
  unsigned jobs;
} qc_chase_options;

QC_API void qc_chase_options_init(qc_chase_options* opts);
QC_API qc_status qc_chase_run(const qc_system* sys, const qc_chase_options* opts, qc_chase** out);
/* Reads a dChase written by qc_chase_nquads. */
QC_API qc_status qc_chase_load(const char* path, qc_chase** out);
QC_API void qc_chase_free(qc_chase* chase);

QC_API qc_chase_status qc_chase_get_status(const qc_chase* chase);
QC_API qc_status qc_chase_counts(const qc_chase* chase, size_t* quads, size_t* iterations, size_t* generating);
QC_API qc_status qc_chase_stop_reason(const qc_chase* chase, char** out);
/* Serialized dChase preceded by a one-line `#` header. */
QC_API qc_status qc_chase_nquads(const qc_chase* chase, char** out);
QC_API qc_status qc_chase_stats_json(const qc_chase* chase, char** out);
/* One line per violated constraint: `rule-id  ?x=value ...`. */
QC_API qc_status qc_chase_violations(const qc_chase* chase, char** out);

/* Queries */

QC_API qc_status qc_query_parse(const char* text, qc_query** out);
QC_API qc_status qc_query_load(const char* path, qc_query** out);
QC_API void qc_query_free(qc_query* q);
QC_API int qc_query_is_boolean(const qc_query* q);

typedef struct qc_answer_info {
  int boolean;
  int entailed; /* boolean queries */
  size_t tuples;
  int complete;
  int inconsistent;
} qc_answer_info;

/* Evaluates `q` over `chase`. `out` gets the formatted answer; `warnings`
 * (optional) gets newline-separated notes about partial or inconsistent
 * dChases. */
QC_API qc_status qc_query_eval(const qc_chase* chase, const qc_query* q, qc_format format, qc_answer_info* info,
                               char** out, char** warnings);

/* Reductions: each writes system.nq, rules.qrules and query.ccq into `dir`. */

QC_API qc_status qc_encode_cfg(const char* g1_path, const char* g2_path, const char* dir);
QC_API qc_status qc_encode_horn(const char* path, const char* dir);
QC_API qc_status qc_encode_dtm(const char* path, const char* input, unsigned n, const char* dir);

/* Lists the triple rules of a local semantics. */
QC_API qc_status qc_explain_semantics(const char* name, int rdfs_resource_rule, char** out);

#ifdef __cplusplus
}
#endif

#endif
