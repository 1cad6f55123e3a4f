#include "germen/germen.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "germen/error.hpp"
#include "germen/session.hpp"

struct germen_session {
  germen::Session impl;
};

namespace {

thread_local std::string g_last_error;

char* to_c_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `fn`, mapping exceptions onto status codes.
template <typename Fn>
germen_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return GERMEN_OK;
  } catch (const germen::InputError& e) {
    g_last_error = e.what();
    return GERMEN_ERR_INPUT;
  } catch (const germen::InternalError& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return GERMEN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return GERMEN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error: unknown exception";
    return GERMEN_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw germen::InputError(std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* germen_last_error(void) { return g_last_error.c_str(); }

void germen_string_free(char* s) { std::free(s); }

void germen_cluster_config_init(germen_cluster_config* cfg) {
  if (!cfg) return;
  cfg->k = germen::kDefaultK;
  cfg->min_df = germen::kDefaultMinDf;
  cfg->max_df = germen::kDefaultMaxDf;
}

void germen_compare_options_init(germen_compare_options* opts) {
  if (!opts) return;
  const germen::CompareOptions d;
  opts->min_support = d.min_support;
  opts->min_midova = d.min_midova;
  opts->min_confidence = d.min_confidence;
}

germen_status germen_session_create(const germen_cluster_config* cfg, germen_session** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    germen::ClusterOptions opts;
    if (cfg) opts = {cfg->k, cfg->min_df, cfg->max_df};
    *out = new germen_session{germen::Session(opts)};
  });
}

germen_status germen_session_load(const char* path, germen_session** out) {
  return guarded([&] {
    require(out, "out");
    require(path, "path");
    *out = nullptr;
    *out = new germen_session{germen::Session::load(path)};
  });
}

void germen_session_free(germen_session* session) { delete session; }

germen_status germen_session_save(const germen_session* session, const char* path) {
  return guarded([&] {
    require(session, "session");
    require(path, "path");
    session->impl.save(path);
  });
}

germen_status germen_session_serialize(const germen_session* session, char** out) {
  return guarded([&] {
    require(session, "session");
    require(out, "out");
    *out = to_c_string(session->impl.serialize());
  });
}

size_t germen_session_k(const germen_session* session) { return session ? session->impl.k() : 0; }

germen_status germen_session_config(const germen_session* session, germen_cluster_config* out) {
  return guarded([&] {
    require(session, "session");
    require(out, "out");
    const auto& v = session->impl.vocabulary();
    *out = {session->impl.k(), v.min_df(), v.max_df()};
  });
}

size_t germen_session_size(const germen_session* session) {
  return session ? session->impl.engine().size() : 0;
}

germen_status germen_session_ingest_file(germen_session* session, const char* corpus_path,
                                         const char* period, germen_diagnostic_fn on_diagnostic,
                                         germen_trace_fn on_trace, void* user, size_t* inserted) {
  return guarded([&] {
    require(session, "session");
    require(corpus_path, "corpus_path");
    const auto corpus = germen::parse_corpus_file(corpus_path);
    std::optional<std::string> p;
    if (period) p = period;
    const auto result = session->impl.ingest(corpus, p);
    if (on_diagnostic) {
      for (const auto& d : result.diagnostics) on_diagnostic(d.line, d.message.c_str(), user);
    }
    if (on_trace) {
      for (const auto& t : result.trace) on_trace(t.to_line().c_str(), user);
    }
    if (inserted) *inserted = result.inserted;
  });
}

germen_status germen_session_node(const germen_session* session, const char* doc_id,
                                  double* density, char** heads) {
  return guarded([&] {
    require(session, "session");
    require(doc_id, "doc_id");
    const auto& engine = session->impl.engine();
    const auto v = engine.graph().index_of(doc_id);
    if (density) *density = engine.state(v).density;
    if (heads) {
      std::string csv;
      for (auto h : engine.state(v).heads) {
        if (!csv.empty()) csv += ',';
        csv += engine.graph().id(h);
      }
      *heads = to_c_string(csv);
    }
  });
}

germen_status germen_session_stats(const germen_session* session, char** out) {
  return guarded([&] {
    require(session, "session");
    require(out, "out");
    *out = to_c_string(session->impl.stats_report());
  });
}

germen_status germen_compare(const germen_session* before, const germen_session* after,
                             const germen_compare_options* opts, char** report, char** rules,
                             char** crosstab) {
  return guarded([&] {
    require(before, "before");
    require(after, "after");
    germen::CompareOptions o;
    if (opts) o = {opts->min_support, opts->min_midova, opts->min_confidence};
    const auto r = germen::compare_sessions(before->impl, after->impl, o);
    // Allocate everything before handing out ownership.
    char* a = report ? to_c_string(r.report) : nullptr;
    char* b = rules ? to_c_string(r.rules) : nullptr;
    char* c = crosstab ? to_c_string(r.crosstab) : nullptr;
    if (report) *report = a;
    if (rules) *rules = b;
    if (crosstab) *crosstab = c;
  });
}

}  // extern "C"
