#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "germen/corpus.hpp"

namespace germen {

using NodeIndex = std::uint32_t;

inline constexpr std::size_t kDefaultK = 3;

/// Cosine of two unit-norm vectors, i.e. their dot product. Summation runs in
/// increasing term order so cosine(a, b) and cosine(b, a) are bit-identical.
double cosine(const SparseVector& a, const SparseVector& b);

struct Edge {
  NodeIndex target;
  double weight;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct LinkChange {
  NodeIndex from;
  NodeIndex to;
  double weight;
};

/// Everything one insertion changed. `affected` holds every endpoint of a
/// created or removed edge plus the new node, sorted by id.
struct LinkDelta {
  NodeIndex new_node = 0;
  std::vector<NodeIndex> affected;
  std::vector<LinkChange> created;
  std::vector<LinkChange> removed;
};

/// Incremental directed K-nearest-neighbour graph over unit-norm sparse
/// vectors. Each node keeps its (up to) K most similar predecessors and
/// successors; candidates rank by cosine descending, then doc id ascending,
/// so the edge set never depends on insertion order. Zero-cosine pairs are
/// never linked.
///
/// Single writer. Const access is safe to share between insertions.
class SimGraph {
 public:
  explicit SimGraph(std::size_t k = kDefaultK);

  /// Rebuilds a graph from stored out-neighbour lists (ids per node). Edge
  /// weights are recomputed from the vectors. Throws InputError when a list
  /// references an unknown node, exceeds K, or links a zero-cosine pair.
  static SimGraph from_adjacency(std::size_t k, std::vector<std::string> ids,
                                 std::vector<SparseVector> vectors,
                                 const std::vector<std::vector<std::string>>& out_ids);

  std::size_t k() const { return k_; }
  std::size_t size() const { return ids_.size(); }

  bool contains(std::string_view id) const;
  /// Throws InputError for an unknown id.
  NodeIndex index_of(std::string_view id) const;
  const std::string& id(NodeIndex v) const { return ids_[v]; }
  const SparseVector& vector(NodeIndex v) const { return vectors_[v]; }

  /// Sorted by weight descending, then id ascending.
  std::span<const Edge> out_edges(NodeIndex v) const { return out_[v]; }
  std::span<const NodeIndex> in_nbrs(NodeIndex v) const { return in_[v]; }

  /// True when an edge joins a and b in either direction.
  bool linked(NodeIndex a, NodeIndex b) const;
  /// Stored weight of the a-b link in either direction; 0 when unlinked.
  double link_weight(NodeIndex a, NodeIndex b) const;

  /// Strict "ranks before" on candidates: higher weight, then smaller id.
  bool ranks_before(double wa, NodeIndex a, double wb, NodeIndex b) const {
    return wa > wb || (wa == wb && ids_[a] < ids_[b]);
  }
  bool id_less(NodeIndex a, NodeIndex b) const { return ids_[a] < ids_[b]; }
  void sort_by_id(std::vector<NodeIndex>& nodes) const;

  /// Adds a node and links it. Throws InputError on a duplicate id or an
  /// empty vector.
  LinkDelta insert_node(std::string id, SparseVector vec);

  /// Income and outcome neighbours, sorted by id.
  std::vector<NodeIndex> neighborhood1(NodeIndex v) const;
  /// Union of neighborhood1 over neighborhood1(v), minus v; sorted by id.
  std::vector<NodeIndex> neighborhood2(NodeIndex v) const;

  /// Ids of all nodes in lexicographic order.
  std::vector<NodeIndex> nodes_by_id() const;

 private:
  NodeIndex add_unlinked(std::string id, SparseVector vec);
  void add_edge(NodeIndex from, NodeIndex to, double w);
  void remove_last_edge(NodeIndex from, LinkDelta& delta);

  std::size_t k_;
  std::vector<std::string> ids_;
  std::vector<SparseVector> vectors_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<NodeIndex>> in_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::vector<std::vector<NodeIndex>> postings_;  // term -> nodes carrying it
};

}  // namespace germen
