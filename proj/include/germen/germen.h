/*
 * C interface to the GERMEN incremental document-stream clusterer and its
 * period-to-period trend comparison.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returning germen_status leaves a message for
 * germen_last_error() on failure (per calling thread). Strings returned
 * through char** out-parameters are owned by the caller and released with
 * germen_string_free().
 */
#ifndef GERMEN_H
#define GERMEN_H

#include <stddef.h>

#if defined(GERMEN_BUILDING_LIBRARY)
#define GERMEN_API __attribute__((visibility("default")))
#else
#define GERMEN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum germen_status {
  GERMEN_OK = 0,
  GERMEN_ERR_INPUT = 1,    /* bad file, bad id, threshold misuse */
  GERMEN_ERR_INTERNAL = 2  /* invariant violation */
} germen_status;

typedef struct germen_session germen_session;

typedef struct germen_cluster_config {
  size_t k;      /* neighbours per node, default 3 */
  size_t min_df; /* drop terms in fewer documents, default 2 */
  double max_df; /* drop terms in a larger share of documents, default 0.5 */
} germen_cluster_config;

typedef struct germen_compare_options {
  double min_support;    /* default 2.0 */
  double min_midova;     /* retained pairs exceed this, default 0.0 */
  double min_confidence; /* rule lines at or above this, default 0.5 */
} germen_compare_options;

/* Called once per malformed or skipped record (line is 1-based, 0 if none). */
typedef void (*germen_diagnostic_fn)(size_t line, const char* message, void* user);
/* Called once per insertion with "doc_id n_affected n_density_changes
 * n_head_changes n_worklist_rounds". */
typedef void (*germen_trace_fn)(const char* line, void* user);

GERMEN_API const char* germen_last_error(void);
GERMEN_API void germen_string_free(char* s);

GERMEN_API void germen_cluster_config_init(germen_cluster_config* cfg);
GERMEN_API void germen_compare_options_init(germen_compare_options* opts);

GERMEN_API germen_status germen_session_create(const germen_cluster_config* cfg,
                                               germen_session** out);
GERMEN_API germen_status germen_session_load(const char* path, germen_session** out);
GERMEN_API void germen_session_free(germen_session* session);

GERMEN_API germen_status germen_session_save(const germen_session* session, const char* path);
GERMEN_API germen_status germen_session_serialize(const germen_session* session, char** out);

GERMEN_API size_t germen_session_k(const germen_session* session);
/* Configuration the session was created or saved with. */
GERMEN_API germen_status germen_session_config(const germen_session* session,
                                               germen_cluster_config* out);
GERMEN_API size_t germen_session_size(const germen_session* session);

/* Reads a corpus file, builds the vocabulary over all of its records, and
 * inserts those of `period` (NULL for all) in file order. Callbacks may be
 * NULL. `inserted` (nullable) receives the number of documents added. */
GERMEN_API germen_status germen_session_ingest_file(germen_session* session,
                                                    const char* corpus_path, const char* period,
                                                    germen_diagnostic_fn on_diagnostic,
                                                    germen_trace_fn on_trace, void* user,
                                                    size_t* inserted);

/* Density and comma-separated clusterhead ids of one document. */
GERMEN_API germen_status germen_session_node(const germen_session* session, const char* doc_id,
                                             double* density, char** heads);

/* Clustering summary, taxonomy, N-arity histogram and kernel tables. */
GERMEN_API germen_status germen_session_stats(const germen_session* session, char** out);

/* Compares `before` with `after`. Any of report/rules/crosstab may be NULL
 * when that artifact is not wanted. */
GERMEN_API germen_status germen_compare(const germen_session* before,
                                        const germen_session* after,
                                        const germen_compare_options* opts, char** report,
                                        char** rules, char** crosstab);

#ifdef __cplusplus
}
#endif

#endif /* GERMEN_H */
