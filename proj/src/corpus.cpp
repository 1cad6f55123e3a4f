#include "germen/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>

#include "germen/error.hpp"

namespace germen {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

bool is_valid_doc_id(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == '\t' || c == '\n' || c == '\r' || c == ' ' || c == ',' || c == ';' || c == ':';
  });
}

ParsedCorpus parse_corpus(std::istream& in) {
  ParsedCorpus out;
  std::unordered_map<std::string, std::size_t> first_line;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || line.front() == '#') continue;

    const auto fields = split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4) {
      out.diagnostics.push_back(
          {line_no, "malformed record: expected 3 or 4 tab-separated fields, got " +
                        std::to_string(fields.size())});
      continue;
    }
    const auto id = trim(fields[0]);
    const auto period = trim(fields[1]);
    if (!is_valid_doc_id(id)) {
      out.diagnostics.push_back({line_no, "malformed record: invalid document id '" +
                                              std::string(id) + "'"});
      continue;
    }
    if (period.empty()) {
      out.diagnostics.push_back({line_no, "malformed record: empty period"});
      continue;
    }

    Document doc;
    doc.id = std::string(id);
    doc.period = std::string(period);
    doc.line = line_no;
    if (fields.size() == 4) doc.title = std::string(trim(fields[3]));
    for (auto kw : split(fields[2], ';')) {
      kw = trim(kw);
      if (!kw.empty()) doc.keywords.emplace_back(kw);
    }
    std::sort(doc.keywords.begin(), doc.keywords.end());
    doc.keywords.erase(std::unique(doc.keywords.begin(), doc.keywords.end()), doc.keywords.end());

    if (auto [it, fresh] = first_line.emplace(doc.id, line_no); !fresh) {
      throw InputError("duplicate document id '" + doc.id + "' on lines " +
                       std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    if (doc.keywords.empty()) {
      out.diagnostics.push_back({line_no, "document '" + doc.id + "' has no keywords"});
    }
    out.documents.push_back(std::move(doc));
  }
  return out;
}

ParsedCorpus parse_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file '" + path + "'");
  return parse_corpus(in);
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                       std::size_t min_df, double max_df)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), min_df_(min_df), max_df_(max_df) {
  if (terms_.size() != doc_freq_.size()) {
    throw InputError("vocabulary terms and frequencies differ in length");
  }
  if (!std::is_sorted(terms_.begin(), terms_.end()) ||
      std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end()) {
    throw InputError("vocabulary terms must be unique and lexicographically sorted");
  }
}

TermIndex Vocabulary::find(std::string_view term) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
  if (it == terms_.end() || *it != term) return terms_.size();
  return static_cast<TermIndex>(it - terms_.begin());
}

Vocabulary build_vocabulary(std::span<const Document> docs, std::size_t min_df, double max_df) {
  if (min_df < 1) throw InputError("min_df must be at least 1");
  if (!(max_df > 0.0 && max_df <= 1.0)) throw InputError("max_df must lie in (0, 1]");

  std::map<std::string, std::size_t> df;
  for (const auto& d : docs) {
    for (const auto& kw : d.keywords) ++df[kw];  // keywords are unique per document
  }
  const auto n = static_cast<double>(docs.size());
  std::vector<std::string> terms;
  std::vector<std::size_t> freq;
  for (const auto& [term, count] : df) {
    if (count >= min_df && static_cast<double>(count) / n <= max_df) {
      terms.push_back(term);
      freq.push_back(count);
    }
  }
  if (terms.empty() && !docs.empty()) {
    throw InputError("vocabulary is empty after filtering (min_df=" + std::to_string(min_df) +
                     ", max_df=" + std::to_string(max_df) +
                     "); relax the thresholds");
  }
  return Vocabulary(std::move(terms), std::move(freq), min_df, max_df);
}

SparseVector::SparseVector(std::vector<SparseEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!(entries_[i].weight > 0.0)) throw InputError("sparse vector weights must be positive");
    if (i > 0 && entries_[i - 1].index >= entries_[i].index) {
      throw InputError("sparse vector indices must be strictly increasing");
    }
  }
}

double SparseVector::weight_of(TermIndex t) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                                   [](const SparseEntry& e, TermIndex v) { return e.index < v; });
  return it != entries_.end() && it->index == t ? it->weight : 0.0;
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.weight * e.weight;
  return std::sqrt(s);
}

std::vector<std::string> retained_keywords(const Document& doc, const Vocabulary& vocab) {
  std::vector<std::string> out;
  for (const auto& kw : doc.keywords) {
    if (vocab.find(kw) < vocab.size()) out.push_back(kw);
  }
  return out;
}

SparseVector vectorize(const Document& doc, const Vocabulary& vocab) {
  std::vector<TermIndex> idx;
  for (const auto& kw : doc.keywords) {
    if (const auto t = vocab.find(kw); t < vocab.size()) idx.push_back(t);
  }
  if (idx.empty()) {
    throw InputError("document '" + doc.id + "' is unusable: no keyword survives the vocabulary filter");
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  const double w = 1.0 / std::sqrt(static_cast<double>(idx.size()));
  std::vector<SparseEntry> entries;
  entries.reserve(idx.size());
  for (auto t : idx) entries.push_back({t, w});
  return SparseVector(std::move(entries));
}

}  // namespace germen
