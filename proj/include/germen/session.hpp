#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "germen/corpus.hpp"
#include "germen/engine.hpp"
#include "germen/snapshot.hpp"
#include "germen/state_io.hpp"
#include "germen/trend_report.hpp"

namespace germen {

struct ClusterOptions {
  std::size_t k = kDefaultK;
  std::size_t min_df = kDefaultMinDf;
  double max_df = kDefaultMaxDf;
};

/// A clustering run that can be persisted and resumed: engine, vocabulary
/// and the retained content of every inserted document.
class Session {
 public:
  explicit Session(const ClusterOptions& opts = {});

  static Session load(const std::string& path);
  static Session parse(std::istream& in);
  std::string serialize() const;
  void save(const std::string& path) const;

  const Engine& engine() const { return engine_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const std::map<std::string, StoredDocument>& documents() const { return docs_; }
  std::size_t k() const { return engine_.k(); }

  /// Distinct periods of the inserted documents, sorted, joined with '+'.
  std::string period_label() const;

  struct IngestResult {
    std::size_t inserted = 0;
    std::vector<Diagnostic> diagnostics;
    std::vector<InsertTrace> trace;
  };

  /// Builds the vocabulary over the whole corpus (every period), then inserts
  /// the documents of `period` (all when unset) in stream order. A resumed
  /// session requires the corpus to yield the stored vocabulary.
  IngestResult ingest(const ParsedCorpus& corpus, const std::optional<std::string>& period);

  /// Inserts one document against the current vocabulary.
  InsertTrace insert(const Document& doc);

  /// Top-3 participation keywords joined with '/'; for a cluster without
  /// internal links, the head's first three keywords.
  std::string human_label(const Cluster& cluster) const;

  /// Summary, taxonomy, N-arity histogram and per-kernel listing with
  /// keyword participation tables.
  std::string stats_report() const;

 private:
  ClusterOptions opts_;
  Engine engine_;
  Vocabulary vocab_;
  std::map<std::string, StoredDocument> docs_;
};

struct CompareOptions {
  double min_support = 2.0;
  double min_midova = 0.0;
  double min_confidence = 0.5;
};

struct CompareResult {
  std::string report;
  std::string rules;
  std::string crosstab;
  std::vector<std::string> c1;
  std::vector<std::string> c2;
  std::vector<ClassPair> pairs;
  std::vector<TrendEvent> events;
};

/// Snapshot -> typicality -> pairs -> events -> report for two sessions
/// sharing one vocabulary.
CompareResult compare_sessions(const Session& before, const Session& after,
                               const CompareOptions& opts = {});

}  // namespace germen
