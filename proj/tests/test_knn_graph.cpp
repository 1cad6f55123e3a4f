#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "germen/error.hpp"
#include "germen/knn_graph.hpp"
#include "oracles.hpp"

using namespace germen;

namespace {

SparseVector vec(std::vector<std::size_t> terms) {
  return oracle::to_vector({"", std::move(terms)});
}

std::set<std::string> ids(const SimGraph& g, const std::vector<NodeIndex>& nodes) {
  std::set<std::string> out;
  for (auto v : nodes) out.insert(g.id(v));
  return out;
}

}  // namespace

TEST_CASE("cosine: identity, orthogonality, half overlap") {
  const auto v = vec({1, 4, 9});
  CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine(vec({1, 2}), vec({3, 4})) == 0.0);
  // Each of two 2-keyword documents shares one keyword: (1/sqrt2)^2.
  CHECK(cosine(vec({1, 2}), vec({2, 3})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cosine(vec({1, 2, 5}), vec({2, 5, 7, 8})) == cosine(vec({2, 5, 7, 8}), vec({1, 2, 5})));
}

TEST_CASE("insert_node: first node has no link") {
  SimGraph g(3);
  const auto d = g.insert_node("a", vec({1}));
  CHECK(g.out_edges(0).empty());
  CHECK(d.affected == std::vector<NodeIndex>{0});
  CHECK(d.created.empty());
}

TEST_CASE("insert_node: second similar node links both ways") {
  SimGraph g(3);
  g.insert_node("a", vec({1, 2}));
  const auto d = g.insert_node("b", vec({2, 3}));
  REQUIRE(g.out_edges(0).size() == 1);
  REQUIRE(g.out_edges(1).size() == 1);
  CHECK(g.out_edges(0)[0].target == 1);
  CHECK(g.out_edges(1)[0].target == 0);
  CHECK(ids(g, d.affected) == std::set<std::string>{"a", "b"});
}

TEST_CASE("insert_node: zero-cosine candidates are never linked") {
  SimGraph g(3);
  g.insert_node("a", vec({1}));
  const auto d = g.insert_node("b", vec({2}));
  CHECK(g.out_edges(0).empty());
  CHECK(g.out_edges(1).empty());
  CHECK(d.affected == std::vector<NodeIndex>{1});
}

TEST_CASE("insert_node: duplicate id and empty vector are rejected") {
  SimGraph g(2);
  g.insert_node("a", vec({1}));
  CHECK_THROWS_AS(g.insert_node("a", vec({1})), InputError);
  CHECK_THROWS_AS(g.insert_node("b", SparseVector{}), InputError);
  CHECK_THROWS_AS(SimGraph(0), InputError);
}

TEST_CASE("insert_node: eviction reports the dropped edge and both endpoints") {
  // K=1. "a" first links to "b" (0.5); "c" is identical to "a" and wins the slot.
  SimGraph g(1);
  g.insert_node("a", vec({1, 2}));
  g.insert_node("b", vec({2, 3}));
  const auto d = g.insert_node("c", vec({1, 2}));
  REQUIRE(d.removed.size() == 1);
  CHECK(g.id(d.removed[0].from) == "a");
  CHECK(g.id(d.removed[0].to) == "b");
  CHECK(g.out_edges(0)[0].target == 2);
  CHECK(ids(g, d.affected) == std::set<std::string>{"a", "b", "c"});
}

TEST_CASE("neighborhood1: isolated, mutual and asymmetric cases") {
  SimGraph g(1);
  g.insert_node("iso", vec({9}));
  CHECK(g.neighborhood1(0).empty());

  // u's single slot goes to v (0.5); v's slot goes to w (identical to v).
  SimGraph h(1);
  h.insert_node("u", vec({1, 2}));
  h.insert_node("v", vec({2, 3}));
  h.insert_node("w", vec({2, 3}));
  const auto u = h.index_of("u"), v = h.index_of("v");
  REQUIRE(h.out_edges(u)[0].target == v);
  REQUIRE(h.out_edges(v)[0].target != u);
  CHECK(ids(h, h.neighborhood1(u)) == std::set<std::string>{"v"});
  const auto n1v = ids(h, h.neighborhood1(v));
  CHECK(n1v.contains("u"));
  CHECK_THROWS_AS(h.index_of("missing"), InputError);
}

TEST_CASE("neighborhood2: path and isolated node") {
  SimGraph g(1);
  g.insert_node("a", vec({1, 2}));
  g.insert_node("b", vec({2, 3}));
  g.insert_node("c", vec({3, 4}));
  // a-b-c path, no a-c link (cosine 0).
  CHECK(ids(g, g.neighborhood2(g.index_of("a"))).contains("c"));
  g.insert_node("z", vec({50}));
  CHECK(g.neighborhood2(g.index_of("z")).empty());
}

TEST_CASE("neighborhood2 matches a breadth-first oracle on a random graph") {
  std::mt19937 rng(5);
  const auto docs = oracle::blob_corpus(rng, 15, 30, 3);
  SimGraph g(2);
  for (const auto& d : docs) g.insert_node(d.id, oracle::to_vector(d));
  for (NodeIndex s = 0; s < g.size(); ++s) {
    // Two BFS steps on the undirected view.
    std::vector<int> dist(g.size(), -1);
    std::queue<NodeIndex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      if (dist[v] == 2) continue;
      std::set<NodeIndex> adj;
      for (const auto& e : g.out_edges(v)) adj.insert(e.target);
      for (auto u : g.in_nbrs(v)) adj.insert(u);
      for (auto u : adj) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          q.push(u);
        }
      }
    }
    // N2 = union of N1 over N1(s), minus s: nodes at distance 2, plus
    // distance-1 nodes that have another distance-1 neighbour.
    std::set<std::string> expected;
    for (NodeIndex u = 0; u < g.size(); ++u) {
      if (dist[u] == 2) expected.insert(g.id(u));
      if (dist[u] == 1) {
        for (NodeIndex w = 0; w < g.size(); ++w)
          if (w != u && dist[w] == 1 && g.linked(u, w)) expected.insert(g.id(u));
      }
    }
    CHECK(ids(g, g.neighborhood2(s)) == expected);
  }
}

TEST_CASE("incremental graph equals the batch all-pairs K-NN graph") {
  for (std::size_t k : {1, 2, 3, 5}) {
    for (unsigned seed = 1; seed <= 6; ++seed) {
      std::mt19937 rng(seed);
      const auto docs = oracle::blob_corpus(rng, 10 + seed, 24, 3);
      const auto expected = oracle::batch_knn(docs, 24, k);
      SimGraph g(k);
      for (const auto& d : docs) g.insert_node(d.id, oracle::to_vector(d));
      for (std::size_t v = 0; v < docs.size(); ++v) {
        const auto out = g.out_edges(g.index_of(docs[v].id));
        REQUIRE(out.size() == expected[v].size());
        for (std::size_t i = 0; i < out.size(); ++i) CHECK(g.id(out[i].target) == docs[expected[v][i]].id);
      }
    }
  }
}

TEST_CASE("graph edge set is independent of insertion order") {
  std::mt19937 rng(42);
  auto docs = oracle::blob_corpus(rng, 40, 60, 4);
  auto edge_set = [](const SimGraph& g) {
    std::set<std::pair<std::string, std::string>> s;
    for (NodeIndex v = 0; v < g.size(); ++v)
      for (const auto& e : g.out_edges(v)) s.emplace(g.id(v), g.id(e.target));
    return s;
  };
  SimGraph base(3);
  for (const auto& d : docs) base.insert_node(d.id, oracle::to_vector(d));
  const auto reference = edge_set(base);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(docs.begin(), docs.end(), rng);
    SimGraph g(3);
    for (const auto& d : docs) g.insert_node(d.id, oracle::to_vector(d));
    CHECK(edge_set(g) == reference);
  }
}

TEST_CASE("LinkDelta soundness: nodes outside LL keep their out-lists") {
  std::mt19937 rng(9);
  const auto docs = oracle::blob_corpus(rng, 30, 40, 3);
  SimGraph g(3);
  for (const auto& d : docs) {
    std::vector<std::vector<Edge>> before;
    for (NodeIndex v = 0; v < g.size(); ++v) before.emplace_back(g.out_edges(v).begin(), g.out_edges(v).end());
    const auto delta = g.insert_node(d.id, oracle::to_vector(d));
    const std::set<NodeIndex> ll(delta.affected.begin(), delta.affected.end());
    for (NodeIndex v = 0; v < before.size(); ++v) {
      if (ll.contains(v)) continue;
      CHECK(std::equal(before[v].begin(), before[v].end(), g.out_edges(v).begin(), g.out_edges(v).end()));
      CHECK(g.neighborhood1(v).size() == [&] {
        std::set<NodeIndex> s;
        for (const auto& e : before[v]) s.insert(e.target);
        for (auto u : g.in_nbrs(v)) s.insert(u);
        return s.size();
      }());
    }
    for (const auto& c : delta.created) {
      CHECK(ll.contains(c.from));
      CHECK(ll.contains(c.to));
    }
  }
}

TEST_CASE("reverse index stays consistent and weights equal cosines") {
  std::mt19937 rng(13);
  const auto docs = oracle::blob_corpus(rng, 35, 50, 5);
  SimGraph g(3);
  for (const auto& d : docs) g.insert_node(d.id, oracle::to_vector(d));
  for (NodeIndex v = 0; v < g.size(); ++v) {
    CHECK(g.out_edges(v).size() <= 3);
    for (const auto& e : g.out_edges(v)) {
      CHECK(e.weight > 0.0);
      CHECK(e.weight == cosine(g.vector(v), g.vector(e.target)));
      const auto in = g.in_nbrs(e.target);
      CHECK(std::count(in.begin(), in.end(), v) == 1);
    }
    for (auto u : g.in_nbrs(v)) {
      const auto out = g.out_edges(u);
      CHECK(std::any_of(out.begin(), out.end(), [&](const Edge& e) { return e.target == v; }));
    }
  }
}
