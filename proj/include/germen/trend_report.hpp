#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "germen/snapshot.hpp"

namespace germen {

/// A C1 class A and a C2 class B whose fuzzy itemset AB is attractive.
struct ClassPair {
  std::string a;
  std::string b;
  double support = 0.0;
  double midova = 0.0;
  double conf_ab = 0.0;
  double conf_ba = 0.0;
};

struct PairOptions {
  double min_support = 2.0;
  double min_midova = 0.0;  // retained pairs need midova strictly above this
};

/// Evaluates every A in c1 against every B in c2 that share a keyword with
/// non-zero typicality in both. Keywords (rows of `typ`) are the objects.
/// Throws InputError when c1 and c2 overlap or name an unknown column.
std::vector<ClassPair> pair_associations(const TypicalityMatrix& typ,
                                         std::span<const std::string> c1,
                                         std::span<const std::string> c2,
                                         const PairOptions& opts = {});

/// Cross-count of C1 classes that have at least one partner.
/// Row r: largest number of C1 partners among A's C2 partners (premises
/// from C1). Column c: number of C2 partners of A. A continuation lands in
/// [1][1], a split into two in [1][2], each side of a two-way merge in [2][1].
struct Crosstab {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::size_t>> cells;  // cells[r-1][c-1]

  std::size_t at(std::size_t r, std::size_t c) const;
  std::size_t row_total(std::size_t r) const;
  std::size_t col_total(std::size_t c) const;
  std::size_t total() const;
};

Crosstab degree_crosstab(std::span<const ClassPair> pairs, std::span<const std::string> c1,
                         std::span<const std::string> c2);

std::string render_crosstab(const Crosstab& table);

enum class EventKind { continues, split, merge, cross, dies, born };

std::string_view to_string(EventKind kind);

struct TrendEvent {
  EventKind kind = EventKind::continues;
  std::vector<std::string> c1_classes;  // in the order of the input lists
  std::vector<std::string> c2_classes;
  std::vector<ClassPair> evidence;      // midova descending
  std::string sentence;                 // filled by render_report
};

/// One event per connected component of the bipartite pair graph, typed by
/// its shape; partnerless C1 classes die, partnerless C2 classes are born.
/// Events are ordered by kind, then by first C1 label, then first C2 label.
std::vector<TrendEvent> classify_events(std::span<const ClassPair> pairs,
                                        std::span<const std::string> c1,
                                        std::span<const std::string> c2);

struct ReportContext {
  std::string period1;
  std::string period2;
  std::map<std::string, std::string> human_labels;  // class label -> readable name
  double min_confidence = 0.5;
};

std::string event_sentence(const TrendEvent& event, const ReportContext& ctx);

/// One sentence per event, each followed by its A->B rule lines (midova
/// descending, confidence >= min_confidence). Fills `sentence` in `events`.
std::string render_report(std::vector<TrendEvent>& events, const ReportContext& ctx);

/// Every retained pair as rules in both directions with confidence at or
/// above `min_confidence`, midova descending.
std::string render_rule_dump(std::span<const ClassPair> pairs, double min_confidence);

}  // namespace germen
