#include "germen/knn_graph.hpp"

#include <algorithm>

#include "germen/error.hpp"

namespace germen {

double cosine(const SparseVector& a, const SparseVector& b) {
  const auto ea = a.entries();
  const auto eb = b.entries();
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].index < eb[j].index) {
      ++i;
    } else if (eb[j].index < ea[i].index) {
      ++j;
    } else {
      dot += ea[i].weight * eb[j].weight;
      ++i;
      ++j;
    }
  }
  // Rounding can push a self-product a hair past 1.
  return std::clamp(dot, 0.0, 1.0);
}

SimGraph::SimGraph(std::size_t k) : k_(k) {
  if (k_ < 1) throw InputError("K must be at least 1");
}

bool SimGraph::contains(std::string_view id) const { return by_id_.contains(std::string(id)); }

NodeIndex SimGraph::index_of(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) throw InputError("unknown node '" + std::string(id) + "'");
  return it->second;
}

bool SimGraph::linked(NodeIndex a, NodeIndex b) const { return link_weight(a, b) > 0.0; }

double SimGraph::link_weight(NodeIndex a, NodeIndex b) const {
  for (const auto& e : out_[a])
    if (e.target == b) return e.weight;
  for (const auto& e : out_[b])
    if (e.target == a) return e.weight;
  return 0.0;
}

void SimGraph::sort_by_id(std::vector<NodeIndex>& nodes) const {
  std::sort(nodes.begin(), nodes.end(), [this](NodeIndex a, NodeIndex b) { return id_less(a, b); });
}

std::vector<NodeIndex> SimGraph::nodes_by_id() const {
  std::vector<NodeIndex> all(size());
  for (NodeIndex v = 0; v < all.size(); ++v) all[v] = v;
  sort_by_id(all);
  return all;
}

NodeIndex SimGraph::add_unlinked(std::string id, SparseVector vec) {
  if (!is_valid_doc_id(id)) throw InputError("invalid node id '" + id + "'");
  if (by_id_.contains(id)) throw InputError("duplicate node id '" + id + "'");
  if (vec.empty()) throw InputError("node '" + id + "' has an empty vector");
  const auto v = static_cast<NodeIndex>(ids_.size());
  by_id_.emplace(id, v);
  ids_.push_back(std::move(id));
  for (const auto& e : vec.entries()) {
    if (e.index >= postings_.size()) postings_.resize(e.index + 1);
    postings_[e.index].push_back(v);
  }
  vectors_.push_back(std::move(vec));
  out_.emplace_back();
  in_.emplace_back();
  return v;
}

void SimGraph::add_edge(NodeIndex from, NodeIndex to, double w) {
  auto& out = out_[from];
  const auto pos = std::find_if(out.begin(), out.end(), [&](const Edge& e) {
    return ranks_before(w, to, e.weight, e.target);
  });
  out.insert(pos, Edge{to, w});
  in_[to].push_back(from);
}

void SimGraph::remove_last_edge(NodeIndex from, LinkDelta& delta) {
  const Edge last = out_[from].back();
  out_[from].pop_back();
  auto& in = in_[last.target];
  in.erase(std::find(in.begin(), in.end(), from));
  delta.removed.push_back({from, last.target, last.weight});
}

LinkDelta SimGraph::insert_node(std::string id, SparseVector vec) {
  const NodeIndex x = add_unlinked(std::move(id), std::move(vec));
  const SparseVector& vx = vectors_[x];

  std::vector<NodeIndex> candidates;
  for (const auto& e : vx.entries()) {
    for (NodeIndex u : postings_[e.index])
      if (u != x) candidates.push_back(u);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<Edge> scored;
  scored.reserve(candidates.size());
  for (NodeIndex u : candidates) {
    const double c = cosine(vx, vectors_[u]);
    if (c > 0.0) scored.push_back({u, c});
  }

  LinkDelta delta;
  delta.new_node = x;

  // Prior nodes that now rank x among their K best.
  for (const auto& [u, c] : scored) {
    auto& out = out_[u];
    if (out.size() >= k_) {
      const Edge& worst = out.back();
      if (!ranks_before(c, x, worst.weight, worst.target)) continue;
      remove_last_edge(u, delta);
    }
    add_edge(u, x, c);
    delta.created.push_back({u, x, c});
  }

  std::sort(scored.begin(), scored.end(), [this](const Edge& a, const Edge& b) {
    return ranks_before(a.weight, a.target, b.weight, b.target);
  });
  if (scored.size() > k_) scored.resize(k_);
  for (const auto& [v, c] : scored) {
    add_edge(x, v, c);
    delta.created.push_back({x, v, c});
  }

  delta.affected.push_back(x);
  for (const auto& ch : delta.created) {
    delta.affected.push_back(ch.from);
    delta.affected.push_back(ch.to);
  }
  for (const auto& ch : delta.removed) {
    delta.affected.push_back(ch.from);
    delta.affected.push_back(ch.to);
  }
  std::sort(delta.affected.begin(), delta.affected.end());
  delta.affected.erase(std::unique(delta.affected.begin(), delta.affected.end()),
                       delta.affected.end());
  sort_by_id(delta.affected);
  return delta;
}

std::vector<NodeIndex> SimGraph::neighborhood1(NodeIndex v) const {
  std::vector<NodeIndex> out;
  out.reserve(out_[v].size() + in_[v].size());
  for (const auto& e : out_[v]) out.push_back(e.target);
  out.insert(out.end(), in_[v].begin(), in_[v].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  sort_by_id(out);
  return out;
}

std::vector<NodeIndex> SimGraph::neighborhood2(NodeIndex v) const {
  std::vector<NodeIndex> out;
  for (NodeIndex u : neighborhood1(v)) {
    for (NodeIndex w : neighborhood1(u))
      if (w != v) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  sort_by_id(out);
  return out;
}

SimGraph SimGraph::from_adjacency(std::size_t k, std::vector<std::string> ids,
                                  std::vector<SparseVector> vectors,
                                  const std::vector<std::vector<std::string>>& out_ids) {
  if (ids.size() != vectors.size() || ids.size() != out_ids.size()) {
    throw InputError("adjacency restore: node, vector and edge lists differ in length");
  }
  SimGraph g(k);
  for (std::size_t i = 0; i < ids.size(); ++i) g.add_unlinked(std::move(ids[i]), std::move(vectors[i]));
  for (NodeIndex v = 0; v < g.size(); ++v) {
    const auto& targets = out_ids[v];
    if (targets.size() > k) {
      throw InputError("node '" + g.id(v) + "' lists more than K=" + std::to_string(k) + " out-edges");
    }
    for (const auto& t : targets) {
      const NodeIndex u = g.index_of(t);
      if (u == v) throw InputError("node '" + g.id(v) + "' links to itself");
      for (const auto& e : g.out_[v])
        if (e.target == u) throw InputError("node '" + g.id(v) + "' lists edge to '" + t + "' twice");
      const double c = cosine(g.vectors_[v], g.vectors_[u]);
      if (!(c > 0.0)) {
        throw InputError("edge '" + g.id(v) + "' -> '" + t + "' has zero cosine");
      }
      g.add_edge(v, u, c);
    }
  }
  return g;
}

}  // namespace germen
