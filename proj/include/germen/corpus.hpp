#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace germen {

using TermIndex = std::size_t;

/// One record of the document stream.
struct Document {
  std::string id;
  std::string period;
  std::vector<std::string> keywords;  // sorted, unique
  std::string title;                  // optional fourth field
  std::size_t line = 0;               // 1-based source line, 0 if synthetic
};

struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

struct ParsedCorpus {
  std::vector<Document> documents;  // stream order
  std::vector<Diagnostic> diagnostics;
};

/// Reads `doc_id<TAB>period<TAB>kw1;kw2;...[<TAB>title]` records.
///
/// Malformed lines are skipped and reported in `diagnostics`. Documents with
/// no keywords are kept but flagged. A duplicate id throws InputError naming
/// both lines.
ParsedCorpus parse_corpus(std::istream& in);
ParsedCorpus parse_corpus_file(const std::string& path);

/// Returns true when `id` can be stored in the state file unambiguously.
bool is_valid_doc_id(std::string_view id);

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
             std::size_t min_df, double max_df);

  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& doc_freq() const { return doc_freq_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t min_df() const { return min_df_; }
  double max_df() const { return max_df_; }

  /// Index of `term`, or size() when it is not retained.
  TermIndex find(std::string_view term) const;
  const std::string& term(TermIndex i) const { return terms_.at(i); }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> terms_;  // lexicographic
  std::vector<std::size_t> doc_freq_;
  std::size_t min_df_ = 2;
  double max_df_ = 0.5;
};

inline constexpr std::size_t kDefaultMinDf = 2;
inline constexpr double kDefaultMaxDf = 0.5;

/// Keeps terms with min_df <= df(t) and df(t)/N <= max_df.
///
/// Throws InputError on bad thresholds or when nothing survives the filter
/// (unless `docs` is empty, which yields an empty vocabulary).
Vocabulary build_vocabulary(std::span<const Document> docs, std::size_t min_df = kDefaultMinDf,
                            double max_df = kDefaultMaxDf);

struct SparseEntry {
  TermIndex index;
  double weight;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Unit-norm sparse vector with strictly increasing term indices.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::vector<SparseEntry> entries);

  std::span<const SparseEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double weight_of(TermIndex t) const;
  double norm() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<SparseEntry> entries_;
};

/// Binary incidence over retained terms, scaled to unit Euclidean norm.
/// Throws InputError when the document keeps no term.
SparseVector vectorize(const Document& doc, const Vocabulary& vocab);

/// Retained keywords of `doc`, in vocabulary order.
std::vector<std::string> retained_keywords(const Document& doc, const Vocabulary& vocab);

}  // namespace germen
