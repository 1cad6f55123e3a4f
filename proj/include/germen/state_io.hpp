#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "germen/corpus.hpp"
#include "germen/engine.hpp"

namespace germen {

/// Retained content of an inserted document, enough to rebuild its vector.
struct StoredDocument {
  std::string id;
  std::string period;
  std::vector<std::string> keywords;  // retained terms, vocabulary order
  std::string title;
};

struct StateData {
  Engine engine;
  Vocabulary vocabulary;
  std::vector<StoredDocument> documents;  // sorted by id
};

/// Text state file:
///
///   GERMEN-GRAPH v1 K=<k>
///   id<TAB>density<TAB>heads(comma-sep)<TAB>out-edges(id:weight;...)
///   GERMEN-DOCS v1
///   id<TAB>period<TAB>kw;kw;...<TAB>title
///   GERMEN-VOCAB v1 min_df=<n> max_df=<f>
///   term<TAB>df
///
/// Nodes and documents are in lexicographic id order; densities and weights
/// carry nine decimals.
std::string serialize_state(const Engine& engine, const Vocabulary& vocab,
                            std::span<const StoredDocument> documents);

/// Only the GERMEN-GRAPH section (header plus node lines).
std::string serialize_graph(const Engine& engine);

/// Parses and validates a state file. The graph is rebuilt from the stored
/// vectors and the result must re-serialize to the same graph lines, else
/// InputError.
StateData parse_state(std::istream& in);

}  // namespace germen
