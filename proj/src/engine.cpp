#include "germen/engine.hpp"

#include <algorithm>

#include "germen/error.hpp"

namespace germen {

double density(const SimGraph& g, NodeIndex v) {
  const auto nbrs = g.neighborhood1(v);
  double sum = 0.0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const double svu = g.link_weight(v, nbrs[i]);
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      const double suw = g.link_weight(nbrs[i], nbrs[j]);
      if (suw > 0.0) sum += (svu + g.link_weight(v, nbrs[j]) + suw) / 3.0;
    }
  }
  return sum;
}

double density(const SimGraph& g, std::string_view id) { return density(g, g.index_of(id)); }

std::string InsertTrace::to_line() const {
  return id + ' ' + std::to_string(affected) + ' ' + std::to_string(density_changes) + ' ' +
         std::to_string(head_changes) + ' ' + std::to_string(worklist_rounds);
}

Engine::Engine(std::size_t k) : graph_(k) {}

Engine Engine::restore(SimGraph graph, std::vector<std::vector<NodeIndex>> heads) {
  if (heads.size() != graph.size()) throw InputError("restore: head list count differs from node count");
  Engine e(graph.k());
  e.graph_ = std::move(graph);
  e.states_.resize(e.graph_.size());
  for (NodeIndex v = 0; v < e.size(); ++v) {
    e.states_[v].density = density(e.graph_, v);
    auto& h = heads[v];
    e.graph_.sort_by_id(h);
    e.states_[v].heads = std::move(h);
  }
  for (NodeIndex v = 0; v < e.size(); ++v) {
    if (e.states_[v].heads != e.inherited_heads(v)) {
      throw InputError("restored clusterheads of '" + e.graph_.id(v) +
                       "' disagree with the inheritance rule");
    }
  }
  return e;
}

bool Engine::denser(NodeIndex u, NodeIndex v) const {
  const double du = states_[u].density;
  const double dv = states_[v].density;
  return du > dv || (du == dv && graph_.id_less(u, v));
}

void Engine::sort_by_denser(std::vector<NodeIndex>& nodes) const {
  std::sort(nodes.begin(), nodes.end(), [this](NodeIndex a, NodeIndex b) { return denser(a, b); });
}

std::vector<NodeIndex> Engine::overhang_set(NodeIndex v) const {
  auto n1 = graph_.neighborhood1(v);
  std::erase_if(n1, [&](NodeIndex w) { return !denser(v, w); });
  return n1;
}

std::vector<NodeIndex> Engine::inherited_heads(NodeIndex v) const {
  std::vector<NodeIndex> heads;
  bool overhung = false;
  for (NodeIndex u : graph_.neighborhood1(v)) {
    if (!denser(u, v)) continue;
    overhung = true;
    const auto& hu = states_[u].heads;
    heads.insert(heads.end(), hu.begin(), hu.end());
  }
  if (!overhung) return {v};
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  graph_.sort_by_id(heads);
  return heads;
}

std::vector<NodeIndex> Engine::recompute_densities(const LinkDelta& delta) {
  std::vector<NodeIndex> region(delta.affected.begin(), delta.affected.end());
  for (NodeIndex v : delta.affected) {
    const auto n1 = graph_.neighborhood1(v);
    region.insert(region.end(), n1.begin(), n1.end());
  }
  std::sort(region.begin(), region.end());
  region.erase(std::unique(region.begin(), region.end()), region.end());

  std::vector<NodeIndex> changed;
  for (NodeIndex v : region) {
    const double d = density(graph_, v);
    if (d != states_[v].density) {
      states_[v].density = d;
      changed.push_back(v);
    }
  }
  graph_.sort_by_id(changed);
  return changed;
}

HeadUpdateStats Engine::update_clusterheads(std::vector<NodeIndex> seeds) {
  HeadUpdateStats stats;
  std::vector<char> pending(size(), 0);
  std::vector<NodeIndex> work;
  for (NodeIndex v : seeds) {
    if (!pending[v]) {
      pending[v] = 1;
      work.push_back(v);
    }
  }

  std::size_t max_arity = 1;
  for (const auto& s : states_) max_arity = std::max(max_arity, s.heads.size());

  while (!work.empty()) {
    if (++stats.rounds > (size() + 1) * max_arity) {
      throw InternalError("clusterhead worklist did not settle within " +
                          std::to_string((size() + 1) * max_arity) + " rounds");
    }
    sort_by_denser(work);
    for (NodeIndex v : work) pending[v] = 0;

    std::vector<NodeIndex> next;
    for (NodeIndex v : work) {
      auto heads = inherited_heads(v);
      if (heads == states_[v].heads) continue;
      max_arity = std::max(max_arity, heads.size());
      states_[v].heads = std::move(heads);
      ++stats.head_changes;
      for (NodeIndex w : overhang_set(v)) {
        if (!pending[w]) {
          pending[w] = 1;
          next.push_back(w);
        }
      }
    }
    work = std::move(next);
  }
  return stats;
}

InsertTrace Engine::insert_document(std::string id, SparseVector vec) {
  InsertTrace trace;
  trace.id = id;
  const LinkDelta delta = graph_.insert_node(std::move(id), std::move(vec));
  states_.emplace_back();  // density 0, heads assigned by the worklist

  const auto changed = recompute_densities(delta);

  // A density change can flip the denser relation with any neighbour, so the
  // neighbours of re-weighted nodes join the seeds alongside LL.
  std::vector<NodeIndex> seeds(delta.affected.begin(), delta.affected.end());
  for (NodeIndex v : changed) {
    seeds.push_back(v);
    const auto n1 = graph_.neighborhood1(v);
    seeds.insert(seeds.end(), n1.begin(), n1.end());
  }
  const auto stats = update_clusterheads(std::move(seeds));

  trace.affected = delta.affected.size();
  trace.density_changes = changed.size();
  trace.head_changes = stats.head_changes;
  trace.worklist_rounds = stats.rounds;
  return trace;
}

void Engine::check_invariants() const {
  for (NodeIndex v = 0; v < size(); ++v) {
    const auto& s = states_[v];
    const auto& id = graph_.id(v);
    if (s.heads.empty()) throw InternalError("node '" + id + "' has no clusterhead");
    if (!(s.density >= 0.0)) throw InternalError("node '" + id + "' has a negative density");
    if (s.density != density(graph_, v)) throw InternalError("stale density on node '" + id + "'");
    if (s.heads != inherited_heads(v)) throw InternalError("stale clusterheads on node '" + id + "'");
    for (NodeIndex h : s.heads) {
      if (states_[h].heads != std::vector<NodeIndex>{h}) {
        throw InternalError("head '" + graph_.id(h) + "' of '" + id + "' is not its own sole head");
      }
    }
    if (graph_.out_edges(v).size() > k()) throw InternalError("node '" + id + "' exceeds K out-edges");
    for (const auto& e : graph_.out_edges(v)) {
      const auto in = graph_.in_nbrs(e.target);
      if (std::find(in.begin(), in.end(), v) == in.end()) {
        throw InternalError("reverse index misses edge '" + id + "' -> '" + graph_.id(e.target) + "'");
      }
    }
  }
}

}  // namespace germen
