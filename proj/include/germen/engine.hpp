#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "germen/knn_graph.hpp"

namespace germen {

/// Closed-triangle mass of v: sum over linked pairs {u, w} inside N1(v) of
/// (s(v,u) + s(v,w) + s(u,w)) / 3. Pairs are visited in id order so the
/// result is bit-identical for equal graphs.
double density(const SimGraph& g, NodeIndex v);
double density(const SimGraph& g, std::string_view id);

struct NodeState {
  double density = 0.0;
  std::vector<NodeIndex> heads;  // sorted by id; empty only before first update
};

struct HeadUpdateStats {
  std::size_t head_changes = 0;
  std::size_t rounds = 0;
};

/// Per-insertion counters, as printed by the --trace mode.
struct InsertTrace {
  std::string id;
  std::size_t affected = 0;
  std::size_t density_changes = 0;
  std::size_t head_changes = 0;
  std::size_t worklist_rounds = 0;

  std::string to_line() const;
};

/// Incremental density-peak clusterer over a SimGraph.
///
/// Each document inherits the clusterhead ids of every denser node in its
/// 1-neighbourhood; a node with no denser neighbour heads its own cluster.
/// "Denser" is a strict total order: higher density, then smaller doc id.
/// Final states depend only on the document set and K, never on the order
/// documents arrive in.
class Engine {
 public:
  explicit Engine(std::size_t k = kDefaultK);

  /// Adopts a restored graph with stored head sets. Densities are recomputed;
  /// heads are checked against the inheritance rule (InputError if stale).
  static Engine restore(SimGraph graph, std::vector<std::vector<NodeIndex>> heads);

  std::size_t k() const { return graph_.k(); }
  std::size_t size() const { return graph_.size(); }
  const SimGraph& graph() const { return graph_; }
  const NodeState& state(NodeIndex v) const { return states_[v]; }
  std::span<const NodeState> states() const { return states_; }

  bool denser(NodeIndex u, NodeIndex v) const;

  /// Members of N1(v) that v overhangs, i.e. those less dense than v.
  std::vector<NodeIndex> overhang_set(NodeIndex v) const;

  /// Inserts a document: link update, density refresh, clusterhead worklist.
  InsertTrace insert_document(std::string id, SparseVector vec);

  /// Refreshes densities over LL and its 1-neighbourhood. Returns the nodes
  /// whose value changed, sorted by id.
  std::vector<NodeIndex> recompute_densities(const LinkDelta& delta);

  /// Worklist propagation of clusterhead changes starting from `seeds`.
  /// Throws InternalError if the round bound is exceeded.
  HeadUpdateStats update_clusterheads(std::vector<NodeIndex> seeds);

  /// Throws InternalError on any broken NodeState/EngineState invariant.
  void check_invariants() const;

 private:
  std::vector<NodeIndex> inherited_heads(NodeIndex v) const;
  void sort_by_denser(std::vector<NodeIndex>& nodes) const;

  SimGraph graph_;
  std::vector<NodeState> states_;
};

}  // namespace germen
