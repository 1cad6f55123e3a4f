#include "germen/snapshot.hpp"

#include <algorithm>
#include <unordered_map>

#include "germen/error.hpp"

namespace germen {

std::string_view to_string(ClusterKind kind) {
  switch (kind) {
    case ClusterKind::kernel: return "kernel";
    case ClusterKind::curd: return "curd";
    case ClusterKind::outlier: return "outlier";
  }
  return "?";
}

const Cluster* ClusterSnapshot::find(NodeIndex head) const {
  for (const auto& c : clusters)
    if (c.head == head) return &c;
  return nullptr;
}

ClusterSnapshot extract_clusters(const Engine& engine, std::string period) {
  const auto& g = engine.graph();
  ClusterSnapshot snap;
  snap.period = std::move(period);
  snap.n_arity.resize(engine.size());

  std::unordered_map<NodeIndex, std::vector<NodeIndex>> members;
  for (NodeIndex v : g.nodes_by_id()) {
    const auto& heads = engine.state(v).heads;
    snap.n_arity[v] = heads.size();
    for (NodeIndex h : heads) members[h].push_back(v);
  }

  std::vector<NodeIndex> heads;
  for (const auto& [h, _] : members) heads.push_back(h);
  g.sort_by_id(heads);

  for (NodeIndex h : heads) {
    Cluster c;
    c.head = h;
    c.members = std::move(members[h]);
    if (c.members.size() == 1) {
      c.kind = ClusterKind::outlier;
    } else if (c.members.size() == 2) {
      const NodeIndex a = c.members[0], b = c.members[1];
      const bool isolated = g.neighborhood1(a) == std::vector<NodeIndex>{b} &&
                            g.neighborhood1(b) == std::vector<NodeIndex>{a};
      c.kind = isolated ? ClusterKind::curd : ClusterKind::kernel;
    } else {
      c.kind = ClusterKind::kernel;
    }
    snap.clusters.push_back(std::move(c));
  }
  return snap;
}

std::map<std::size_t, std::size_t> narity_histogram(const ClusterSnapshot& snapshot) {
  std::map<std::size_t, std::size_t> hist;
  for (auto a : snapshot.n_arity) ++hist[a];
  return hist;
}

Distribution document_distribution(const Engine& engine, const ClusterSnapshot& snapshot) {
  Distribution d;
  if (engine.size() == 0) return d;
  std::size_t kernels = 0, curds = 0, outliers = 0, poly = 0;
  for (NodeIndex v = 0; v < engine.size(); ++v) {
    const auto& heads = engine.state(v).heads;
    if (heads.size() > 1) {
      ++poly;
      continue;
    }
    switch (snapshot.find(heads.front())->kind) {
      case ClusterKind::kernel: ++kernels; break;
      case ClusterKind::curd: ++curds; break;
      case ClusterKind::outlier: ++outliers; break;
    }
  }
  const double n = static_cast<double>(engine.size());
  d.kernels = 100.0 * static_cast<double>(kernels) / n;
  d.curds = 100.0 * static_cast<double>(curds) / n;
  d.outliers = 100.0 * static_cast<double>(outliers) / n;
  d.polysemic = 100.0 * static_cast<double>(poly) / n;
  return d;
}

namespace {

// term -> raw participation over the cluster's internal links, increasing term.
std::vector<SparseEntry> raw_participation(const Engine& engine, const Cluster& cluster) {
  const auto& g = engine.graph();
  std::map<TermIndex, double> raw;
  const auto& m = cluster.members;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!g.linked(m[i], m[j])) continue;
      const auto a = g.vector(m[i]).entries();
      const auto b = g.vector(m[j]).entries();
      std::size_t p = 0, q = 0;
      while (p < a.size() && q < b.size()) {
        if (a[p].index < b[q].index) {
          ++p;
        } else if (b[q].index < a[p].index) {
          ++q;
        } else {
          raw[a[p].index] += a[p].weight * b[q].weight;
          ++p;
          ++q;
        }
      }
    }
  }
  std::vector<SparseEntry> out;
  for (const auto& [t, r] : raw)
    if (r > 0.0) out.push_back({t, r});
  return out;
}

}  // namespace

std::vector<Participation> keyword_participation(const Engine& engine, const Cluster& cluster) {
  const auto raw = raw_participation(engine, cluster);
  std::vector<Participation> out;
  if (raw.empty()) return out;
  double total = 0.0;
  for (const auto& e : raw) total += e.weight;
  const double mean = total / static_cast<double>(raw.size());
  for (const auto& e : raw) out.push_back({e.index, e.weight, 100.0 * e.weight / mean});
  std::sort(out.begin(), out.end(), [](const Participation& a, const Participation& b) {
    if (a.percent != b.percent) return a.percent > b.percent;
    return a.term < b.term;
  });
  return out;
}

std::size_t TypicalityMatrix::column_index(std::string_view label) const {
  const auto it = std::find(columns.begin(), columns.end(), label);
  if (it == columns.end()) throw InputError("unknown class label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double TypicalityMatrix::value(TermIndex row, std::size_t column) const {
  const auto& col = values.at(column);
  const auto it = std::lower_bound(col.begin(), col.end(), row,
                                   [](const SparseEntry& e, TermIndex t) { return e.index < t; });
  return it != col.end() && it->index == row ? it->weight : 0.0;
}

double TypicalityMatrix::column_sum(std::size_t column) const {
  double s = 0.0;
  for (const auto& e : values.at(column)) s += e.weight;
  return s;
}

void TypicalityMatrix::append(const TypicalityMatrix& other) {
  if (other.n_rows != n_rows && !(columns.empty() && n_rows == 0)) {
    throw InputError("typicality matrices have different keyword rows");
  }
  n_rows = other.n_rows;
  columns.insert(columns.end(), other.columns.begin(), other.columns.end());
  values.insert(values.end(), other.values.begin(), other.values.end());
  empty.insert(empty.end(), other.empty.begin(), other.empty.end());
}

TypicalityMatrix typicality_matrix(const Engine& engine, const ClusterSnapshot& snapshot,
                                   std::size_t n_terms, std::string_view label_prefix) {
  TypicalityMatrix m;
  m.n_rows = n_terms;
  for (const auto& c : snapshot.clusters) {
    auto raw = raw_participation(engine, c);
    double mx = 0.0;
    for (const auto& e : raw) mx = std::max(mx, e.weight);
    for (auto& e : raw) e.weight /= mx;
    m.columns.push_back(std::string(label_prefix) + engine.graph().id(c.head));
    m.empty.push_back(raw.empty());
    m.values.push_back(std::move(raw));
  }
  return m;
}

}  // namespace germen
