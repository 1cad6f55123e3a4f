/* Exercises the C interface from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "germen/germen.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static size_t diagnostics = 0;
static size_t traces = 0;

static void on_diag(size_t line, const char* message, void* user) {
  (void)line;
  (void)message;
  (void)user;
  ++diagnostics;
}

static void on_trace(const char* line, void* user) {
  (void)user;
  if (line && line[0]) ++traces;
}

static void write_file(const char* path, const char* text) {
  FILE* f = fopen(path, "w");
  if (!f) {
    perror(path);
    exit(2);
  }
  fputs(text, f);
  fclose(f);
}

static const char* kCorpus =
    "a1\t2003\tsoil;creep;slope\n"
    "a2\t2003\tsoil;creep;slope\n"
    "a3\t2003\tsoil;creep\n"
    "b1\t2004\tpile;load;test\n"
    "b2\t2004\tpile;load\n"
    "b3\t2004\tpile;test\n"
    "bad line without tabs\n";

int main(int argc, char** argv) {
  const char* dir = argc > 1 ? argv[1] : ".";
  char corpus[1024], state[1024];
  snprintf(corpus, sizeof corpus, "%s/capi_corpus.tsv", dir);
  snprintf(state, sizeof state, "%s/capi_state.txt", dir);
  write_file(corpus, kCorpus);

  germen_cluster_config cfg;
  germen_cluster_config_init(&cfg);
  EXPECT(cfg.k == 3 && cfg.min_df == 2 && cfg.max_df == 0.5);

  germen_session* s = NULL;
  EXPECT(germen_session_create(&cfg, &s) == GERMEN_OK);
  EXPECT(germen_session_k(s) == 3);

  size_t inserted = 0;
  EXPECT(germen_session_ingest_file(s, corpus, "2003", on_diag, on_trace, NULL, &inserted) ==
         GERMEN_OK);
  EXPECT(inserted == 3);
  EXPECT(traces == 3);
  EXPECT(diagnostics == 1);
  EXPECT(germen_session_size(s) == 3);

  double density = -1.0;
  char* heads = NULL;
  EXPECT(germen_session_node(s, "a2", &density, &heads) == GERMEN_OK);
  EXPECT(density > 0.0);
  EXPECT(heads && strcmp(heads, "a1") == 0);
  germen_string_free(heads);
  EXPECT(germen_session_node(s, "zz", &density, NULL) == GERMEN_ERR_INPUT);
  EXPECT(strstr(germen_last_error(), "zz") != NULL);

  EXPECT(germen_session_save(s, state) == GERMEN_OK);
  germen_session* r = NULL;
  EXPECT(germen_session_load(state, &r) == GERMEN_OK);
  char* t1 = NULL;
  char* t2 = NULL;
  EXPECT(germen_session_serialize(s, &t1) == GERMEN_OK);
  EXPECT(germen_session_serialize(r, &t2) == GERMEN_OK);
  EXPECT(t1 && t2 && strcmp(t1, t2) == 0);
  germen_string_free(t1);
  germen_string_free(t2);

  germen_cluster_config back;
  EXPECT(germen_session_config(r, &back) == GERMEN_OK);
  EXPECT(back.k == 3 && back.min_df == 2 && back.max_df == 0.5);

  EXPECT(germen_session_ingest_file(r, corpus, "2004", NULL, NULL, NULL, &inserted) == GERMEN_OK);
  EXPECT(inserted == 3);

  char* stats = NULL;
  EXPECT(germen_session_stats(r, &stats) == GERMEN_OK);
  EXPECT(stats && strstr(stats, "# Clustering summary") != NULL);
  germen_string_free(stats);

  germen_compare_options opts;
  germen_compare_options_init(&opts);
  EXPECT(opts.min_support == 2.0 && opts.min_midova == 0.0 && opts.min_confidence == 0.5);
  char* report = NULL;
  char* crosstab = NULL;
  EXPECT(germen_compare(s, r, &opts, &report, NULL, &crosstab) == GERMEN_OK);
  EXPECT(report && strstr(report, "# Trend report: 2003 -> 2003+2004") != NULL);
  EXPECT(crosstab != NULL);
  germen_string_free(report);
  germen_string_free(crosstab);

  germen_session* missing = NULL;
  EXPECT(germen_session_load("/nonexistent/state", &missing) == GERMEN_ERR_INPUT);
  EXPECT(missing == NULL);
  cfg.k = 0;
  EXPECT(germen_session_create(&cfg, &missing) == GERMEN_ERR_INPUT);

  germen_session_free(s);
  germen_session_free(r);
  germen_session_free(NULL);
  remove(corpus);
  remove(state);

  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  puts("C API checks passed");
  return 0;
}
