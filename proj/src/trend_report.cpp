#include "germen/trend_report.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "germen/error.hpp"
#include "germen/fuzzy_rules.hpp"

namespace germen {

std::vector<ClassPair> pair_associations(const TypicalityMatrix& typ,
                                         std::span<const std::string> c1,
                                         std::span<const std::string> c2,
                                         const PairOptions& opts) {
  const std::set<std::string> left(c1.begin(), c1.end());
  for (const auto& b : c2) {
    if (left.contains(b)) throw InputError("class label '" + b + "' appears in both classifications");
  }
  std::vector<std::size_t> ia, ib;
  for (const auto& a : c1) ia.push_back(typ.column_index(a));
  for (const auto& b : c2) ib.push_back(typ.column_index(b));

  const double n = static_cast<double>(typ.n_rows);
  std::vector<ClassPair> pairs;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    const auto& colA = typ.values[ia[i]];
    const double sa = typ.column_sum(ia[i]);
    for (std::size_t j = 0; j < c2.size(); ++j) {
      const auto& colB = typ.values[ib[j]];
      double sab = 0.0;
      bool shared = false;
      std::size_t p = 0, q = 0;
      while (p < colA.size() && q < colB.size()) {
        if (colA[p].index < colB[q].index) {
          ++p;
        } else if (colB[q].index < colA[p].index) {
          ++q;
        } else {
          const double vals[] = {colA[p].weight, colB[q].weight};
          sab += fuse(vals);
          shared = true;
          ++p;
          ++q;
        }
      }
      if (!shared) continue;

      const double sb = typ.column_sum(ib[j]);
      const std::size_t va = 0, vb = 1;
      const SupportTable table{{{va}, sa}, {{vb}, sb}};
      const auto bounds = frechet_bounds({va, vb}, table, n);
      const double m = midova_from(sab, bounds);
      if (!(m > opts.min_midova) || sab < opts.min_support) continue;
      pairs.push_back({c1[i], c2[j], sab, m, sab / sa, sab / sb});
    }
  }
  return pairs;
}

std::size_t Crosstab::at(std::size_t r, std::size_t c) const {
  if (r < 1 || c < 1 || r > rows || c > cols) return 0;
  return cells[r - 1][c - 1];
}

std::size_t Crosstab::row_total(std::size_t r) const {
  std::size_t s = 0;
  for (std::size_t c = 1; c <= cols; ++c) s += at(r, c);
  return s;
}

std::size_t Crosstab::col_total(std::size_t c) const {
  std::size_t s = 0;
  for (std::size_t r = 1; r <= rows; ++r) s += at(r, c);
  return s;
}

std::size_t Crosstab::total() const {
  std::size_t s = 0;
  for (std::size_t r = 1; r <= rows; ++r) s += row_total(r);
  return s;
}

Crosstab degree_crosstab(std::span<const ClassPair> pairs, std::span<const std::string> c1,
                         [[maybe_unused]] std::span<const std::string> c2) {
  std::map<std::string, std::vector<std::string>> partners_of_a;
  std::map<std::string, std::size_t> degree_of_b;
  for (const auto& p : pairs) {
    partners_of_a[p.a].push_back(p.b);
    ++degree_of_b[p.b];
  }

  Crosstab t;
  std::vector<std::pair<std::size_t, std::size_t>> tallies;
  for (const auto& a : c1) {
    const auto it = partners_of_a.find(a);
    if (it == partners_of_a.end()) continue;
    std::size_t premises = 0;
    for (const auto& b : it->second) premises = std::max(premises, degree_of_b[b]);
    tallies.emplace_back(premises, it->second.size());
    t.rows = std::max(t.rows, premises);
    t.cols = std::max(t.cols, it->second.size());
  }
  t.cells.assign(t.rows, std::vector<std::size_t>(t.cols, 0));
  for (const auto& [r, c] : tallies) ++t.cells[r - 1][c - 1];
  return t;
}

std::string render_crosstab(const Crosstab& t) {
  std::string out = "\t\tB (C2)\n\t# premises";
  for (std::size_t c = 1; c <= t.cols; ++c) out += '\t' + std::to_string(c);
  out += "\tTotal\n";
  for (std::size_t r = 1; r <= t.rows; ++r) {
    out += (r == 1 ? "A (C1)\t" : "\t") + std::to_string(r);
    for (std::size_t c = 1; c <= t.cols; ++c) {
      out += '\t';
      if (t.at(r, c)) out += std::to_string(t.at(r, c));
    }
    out += '\t' + std::to_string(t.row_total(r)) + '\n';
  }
  out += "Total\t";
  for (std::size_t c = 1; c <= t.cols; ++c) out += '\t' + std::to_string(t.col_total(c));
  out += '\t' + std::to_string(t.total()) + '\n';
  return out;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::continues: return "continue";
    case EventKind::split: return "split";
    case EventKind::merge: return "merge";
    case EventKind::cross: return "cross";
    case EventKind::dies: return "die";
    case EventKind::born: return "born";
  }
  return "?";
}

namespace {

bool by_strength(const ClassPair& x, const ClassPair& y) {
  if (x.midova != y.midova) return x.midova > y.midova;
  if (x.support != y.support) return x.support > y.support;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

}  // namespace

std::vector<TrendEvent> classify_events(std::span<const ClassPair> pairs,
                                        std::span<const std::string> c1,
                                        std::span<const std::string> c2) {
  // Union-find over C1 classes [0, n1) and C2 classes [n1, n1 + n2).
  const std::size_t n1 = c1.size();
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < c1.size(); ++i) pos[c1[i]] = i;
  for (std::size_t j = 0; j < c2.size(); ++j) {
    if (!pos.emplace(c2[j], n1 + j).second) {
      throw InputError("class label '" + c2[j] + "' appears in both classifications");
    }
  }
  std::vector<std::size_t> parent(n1 + c2.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [&](const std::string& label) {
    const auto it = pos.find(label);
    if (it == pos.end()) throw InputError("pair names unknown class '" + label + "'");
    return it->second;
  };
  for (const auto& p : pairs) {
    const auto a = index_of(p.a), b = index_of(p.b);
    if (a >= n1 || b < n1) throw InputError("pair '" + p.a + "'/'" + p.b + "' crosses sides");
    parent[find(a)] = find(b);
  }

  std::map<std::size_t, TrendEvent> components;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    auto [it, fresh] = components.try_emplace(find(i));
    if (fresh) order.push_back(it->first);
    if (i < n1) {
      it->second.c1_classes.push_back(c1[i]);
    } else {
      it->second.c2_classes.push_back(c2[i - n1]);
    }
  }
  for (const auto& p : pairs) components[find(index_of(p.a))].evidence.push_back(p);

  std::vector<TrendEvent> events;
  for (auto root : order) {
    auto& e = components[root];
    const auto na = e.c1_classes.size(), nb = e.c2_classes.size();
    if (nb == 0) {
      e.kind = EventKind::dies;
    } else if (na == 0) {
      e.kind = EventKind::born;
    } else if (na == 1 && nb == 1) {
      e.kind = EventKind::continues;
    } else if (na == 1) {
      e.kind = EventKind::split;
    } else if (nb == 1) {
      e.kind = EventKind::merge;
    } else {
      e.kind = EventKind::cross;
    }
    std::sort(e.evidence.begin(), e.evidence.end(), by_strength);
    events.push_back(std::move(e));
  }
  std::stable_sort(events.begin(), events.end(), [](const TrendEvent& x, const TrendEvent& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    const auto fx = x.c1_classes.empty() ? std::string{} : x.c1_classes.front();
    const auto fy = y.c1_classes.empty() ? std::string{} : y.c1_classes.front();
    if (fx != fy) return fx < fy;
    const auto gx = x.c2_classes.empty() ? std::string{} : x.c2_classes.front();
    const auto gy = y.c2_classes.empty() ? std::string{} : y.c2_classes.front();
    return gx < gy;
  });
  return events;
}

namespace {

std::string quoted_list(const std::vector<std::string>& classes, const ReportContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0) out += i + 1 == classes.size() ? " and " : ", ";
    const auto it = ctx.human_labels.find(classes[i]);
    out += '"' + (it == ctx.human_labels.end() ? classes[i] : it->second) + '"';
  }
  return out;
}

}  // namespace

std::string event_sentence(const TrendEvent& e, const ReportContext& ctx) {
  const auto a = quoted_list(e.c1_classes, ctx);
  const auto b = quoted_list(e.c2_classes, ctx);
  const auto& p2 = ctx.period2;
  switch (e.kind) {
    case EventKind::continues: return "In " + p2 + ", class " + a + " remained stable as " + b + ".";
    case EventKind::split: return "In " + p2 + ", class " + a + " split into " + b + ".";
    case EventKind::merge: return "In " + p2 + ", classes " + a + " merged into " + b + ".";
    case EventKind::cross:
      return "In " + p2 + ", classes " + a + " recombined into " + b + ".";
    case EventKind::dies: return "Class " + a + " died out (no successor in " + p2 + ").";
    case EventKind::born: return "In " + p2 + ", a new class " + b + " emerged.";
  }
  return {};
}

std::string render_report(std::vector<TrendEvent>& events, const ReportContext& ctx) {
  std::string out;
  std::size_t rule_no = 0;
  for (auto& e : events) {
    e.sentence = event_sentence(e, ctx);
    out += e.sentence + '\n';
    for (const auto& p : e.evidence) {
      if (p.conf_ab < ctx.min_confidence) continue;
      const std::string a[] = {p.a};
      const std::string b[] = {p.b};
      out += "  " + format_rule(++rule_no, a, b, p.support, p.midova, p.conf_ab) + '\n';
    }
  }
  return out;
}

std::string render_rule_dump(std::span<const ClassPair> pairs, double min_confidence) {
  struct Line {
    const ClassPair* pair;
    bool forward;
    double conf;
  };
  std::vector<Line> lines;
  for (const auto& p : pairs) {
    if (p.conf_ab >= min_confidence) lines.push_back({&p, true, p.conf_ab});
    if (p.conf_ba >= min_confidence) lines.push_back({&p, false, p.conf_ba});
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
    if (x.pair->midova != y.pair->midova) return x.pair->midova > y.pair->midova;
    if (x.conf != y.conf) return x.conf > y.conf;
    if (x.pair->a != y.pair->a) return x.pair->a < y.pair->a;
    if (x.pair->b != y.pair->b) return x.pair->b < y.pair->b;
    return x.forward && !y.forward;
  });
  std::string out;
  std::size_t n = 0;
  for (const auto& l : lines) {
    const std::string a[] = {l.pair->a};
    const std::string b[] = {l.pair->b};
    out += l.forward ? format_rule(++n, a, b, l.pair->support, l.pair->midova, l.conf)
                     : format_rule(++n, b, a, l.pair->support, l.pair->midova, l.conf);
    out += '\n';
  }
  return out;
}

}  // namespace germen
