#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "germen/error.hpp"
#include "germen/trend_report.hpp"
#include "oracles.hpp"

using namespace germen;

namespace {

TypicalityMatrix matrix(std::size_t rows,
                        std::vector<std::pair<std::string, std::vector<SparseEntry>>> cols) {
  TypicalityMatrix t;
  t.n_rows = rows;
  for (auto& [label, v] : cols) {
    t.columns.push_back(label);
    t.empty.push_back(v.empty());
    t.values.push_back(std::move(v));
  }
  return t;
}

std::vector<ClassPair> one_to_one(std::size_t n) {
  std::vector<ClassPair> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.push_back({"A" + std::to_string(i), "B" + std::to_string(i), 3, 1, 1, 1});
  return pairs;
}

std::vector<std::string> sides(const std::vector<ClassPair>& pairs, bool left) {
  std::set<std::string> s;
  for (const auto& p : pairs) s.insert(left ? p.a : p.b);
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("pair_associations: identical columns give confidence 1 both ways") {
  const std::vector<SparseEntry> col{{0, 1.0}, {1, 0.5}, {2, 1.0}, {5, 0.8}};
  const auto typ = matrix(50, {{"A/x", col}, {"B/x", col}});
  const std::vector<std::string> c1{"A/x"}, c2{"B/x"};
  const auto pairs = pair_associations(typ, c1, c2);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].conf_ab == 1.0);
  CHECK(pairs[0].conf_ba == 1.0);
  CHECK(pairs[0].support == doctest::Approx(3.3));
  CHECK(pairs[0].midova > 0.0);
}

TEST_CASE("pair_associations: disjoint supports and label errors") {
  const auto typ = matrix(20, {{"A/x", {{0, 1.0}, {1, 1.0}}}, {"B/y", {{2, 1.0}, {3, 1.0}}}});
  const std::vector<std::string> c1{"A/x"}, c2{"B/y"}, bad{"A/x"}, unknown{"B/q"};
  CHECK(pair_associations(typ, c1, c2).empty());
  CHECK_THROWS_AS(pair_associations(typ, c1, bad), InputError);
  CHECK_THROWS_AS(pair_associations(typ, c1, unknown), InputError);
}

TEST_CASE("pair_associations equals the brute-force pair oracle") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int round = 0; round < 30; ++round) {
    std::vector<std::pair<std::string, std::vector<SparseEntry>>> cols;
    std::vector<std::string> c1, c2;
    for (int c = 0; c < 10; ++c) {
      std::vector<SparseEntry> v;
      for (std::size_t r = 0; r < 30; ++r)
        if (u(rng) < 0.25) v.push_back({r, u(rng) < 0.3 ? 1.0 : u(rng)});
      const std::string label = (c < 5 ? "A/" : "B/") + std::to_string(c);
      (c < 5 ? c1 : c2).push_back(label);
      cols.emplace_back(label, std::move(v));
    }
    const auto typ = matrix(30, cols);
    const auto got = pair_associations(typ, c1, c2, {1.0, 0.0});
    const auto want = oracle::brute_pairs(typ, c1, c2, 1.0);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].a == want[i].a);
      CHECK(got[i].b == want[i].b);
      CHECK(got[i].support == doctest::Approx(want[i].support).epsilon(1e-12));
      CHECK(got[i].midova == doctest::Approx(want[i].midova).epsilon(1e-12));
      CHECK(got[i].conf_ab == doctest::Approx(want[i].conf_ab).epsilon(1e-12));
      CHECK(got[i].conf_ba == doctest::Approx(want[i].conf_ba).epsilon(1e-12));
      CHECK(got[i].midova > 0.0);
    }
  }
}

TEST_CASE("degree_crosstab: one-to-one pairs and a split") {
  const auto pairs = one_to_one(114);
  const auto c1 = sides(pairs, true), c2 = sides(pairs, false);
  const auto t = degree_crosstab(pairs, c1, c2);
  CHECK(t.at(1, 1) == 114);
  CHECK(t.total() == 114);

  const std::vector<ClassPair> split{{"A", "B1", 3, 1, 0.5, 1}, {"A", "B2", 3, 1, 0.5, 1}};
  const std::vector<std::string> a{"A"}, b{"B1", "B2"};
  const auto s = degree_crosstab(split, a, b);
  CHECK(s.at(1, 2) == 1);
  CHECK(s.total() == 1);
}

TEST_CASE("degree_crosstab: cell sum counts C1 classes with a partner") {
  std::mt19937 rng(6);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> c1, c2;
    for (int i = 0; i < 8; ++i) c1.push_back("A" + std::to_string(i));
    for (int i = 0; i < 8; ++i) c2.push_back("B" + std::to_string(i));
    std::vector<ClassPair> pairs;
    std::set<std::string> with_partner;
    for (const auto& a : c1)
      for (const auto& b : c2)
        if (rng() % 7 == 0) {
          pairs.push_back({a, b, 2, 1, 1, 1});
          with_partner.insert(a);
        }
    const auto t = degree_crosstab(pairs, c1, c2);
    CHECK(t.total() == with_partner.size());
    const auto events = classify_events(pairs, c1, c2);
    std::size_t deaths = 0;
    for (const auto& e : events) deaths += e.kind == EventKind::dies;
    CHECK(deaths == c1.size() - with_partner.size());
  }
}

TEST_CASE("render_crosstab layout") {
  const std::vector<ClassPair> pairs{{"A1", "B1", 3, 1, 1, 1}, {"A2", "B2", 3, 1, 1, 1},
                                     {"A2", "B3", 3, 1, 1, 1}};
  const std::vector<std::string> c1{"A1", "A2"}, c2{"B1", "B2", "B3"};
  CHECK(render_crosstab(degree_crosstab(pairs, c1, c2)) ==
        "\t\tB (C2)\n"
        "\t# premises\t1\t2\tTotal\n"
        "A (C1)\t1\t1\t1\t2\n"
        "Total\t\t1\t1\t2\n");
}

TEST_CASE("classify_events recovers the planted fixture") {
  const auto f = oracle::planted_trends();
  const auto pairs = pair_associations(f.typ, f.c1, f.c2);
  const auto events = classify_events(pairs, f.c1, f.c2);
  std::set<std::tuple<EventKind, std::vector<std::string>, std::vector<std::string>>> got, want(
      f.expected.begin(), f.expected.end());
  for (const auto& e : events) {
    auto a = e.c1_classes, b = e.c2_classes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    got.insert({e.kind, a, b});
  }
  CHECK(got == want);
  CHECK(events.size() == f.expected.size());

  const auto t = degree_crosstab(pairs, f.c1, f.c2);
  CHECK(t.at(1, 1) == 2);
  CHECK(t.at(1, 2) == 1);
  CHECK(t.at(2, 1) == 2);
  CHECK(t.at(2, 2) == 2);
  CHECK(t.total() == 7);
}

TEST_CASE("classify_events: partition and errors") {
  const std::vector<ClassPair> pairs{{"A", "B", 2, 1, 1, 1}};
  const std::vector<std::string> c1{"A", "D"}, c2{"B", "N"};
  const auto ev = classify_events(pairs, c1, c2);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0].kind == EventKind::continues);
  CHECK(ev[1].kind == EventKind::dies);
  CHECK(ev[2].kind == EventKind::born);
  const std::vector<std::string> overlap{"A"};
  CHECK_THROWS_AS(classify_events(pairs, c1, overlap), InputError);
  const std::vector<ClassPair> stray{{"A", "Z", 2, 1, 1, 1}};
  CHECK_THROWS_AS(classify_events(stray, c1, c2), InputError);
}

TEST_CASE("render_report sentences and rule lines") {
  ReportContext ctx{"2003", "2004", {{"A", "soil/creep/slope"}, {"B", "soil/creep"}}, 0.5};
  SUBCASE("continue") {
    std::vector<TrendEvent> ev{{EventKind::continues, {"A"}, {"B"}, {{"A", "B", 6.654, 3.291, 0.66, 0.9}}, {}}};
    CHECK(render_report(ev, ctx) ==
          "In 2004, class \"soil/creep/slope\" remained stable as \"soil/creep\".\n"
          "  Rule(1) A->B ; support : 6.65, MIDOVA : 3.29, confidence : 0.66\n");
    CHECK(ev[0].sentence == "In 2004, class \"soil/creep/slope\" remained stable as \"soil/creep\".");
  }
  SUBCASE("die") {
    std::vector<TrendEvent> ev{{EventKind::dies, {"A"}, {}, {}, {}}};
    CHECK(render_report(ev, ctx) == "Class \"soil/creep/slope\" died out (no successor in 2004).\n");
  }
  SUBCASE("merge and split name every class") {
    std::vector<TrendEvent> ev{
        {EventKind::merge, {"A1", "A2"}, {"B"}, {{"A1", "B", 3, 1, 1, 0.5}, {"A2", "B", 3, 0.9, 0.4, 0.5}}, {}},
        {EventKind::split, {"A"}, {"B1", "B2"}, {}, {}}};
    const auto text = render_report(ev, ctx);
    CHECK(text ==
          "In 2004, classes \"A1\" and \"A2\" merged into \"soil/creep\".\n"
          "  Rule(1) A1->B ; support : 3.00, MIDOVA : 1.00, confidence : 1.00\n"
          "In 2004, class \"soil/creep/slope\" split into \"B1\" and \"B2\".\n");
  }
  SUBCASE("born and cross") {
    TrendEvent born{EventKind::born, {}, {"B"}, {}, {}};
    TrendEvent cross{EventKind::cross, {"A1", "A2"}, {"B1", "B2"}, {}, {}};
    CHECK(event_sentence(born, ctx) == "In 2004, a new class \"soil/creep\" emerged.");
    CHECK(event_sentence(cross, ctx) == "In 2004, classes \"A1\" and \"A2\" recombined into \"B1\" and \"B2\".");
  }
}

TEST_CASE("render functions are deterministic") {
  const auto f = oracle::planted_trends();
  const auto pairs = pair_associations(f.typ, f.c1, f.c2);
  ReportContext ctx{"p1", "p2", {}, 0.5};
  auto e1 = classify_events(pairs, f.c1, f.c2);
  auto e2 = classify_events(pairs, f.c1, f.c2);
  CHECK(render_report(e1, ctx) == render_report(e2, ctx));
  const auto dump = render_rule_dump(pairs, 0.5);
  CHECK(dump == render_rule_dump(pairs, 0.5));
  CHECK(dump.rfind("Rule(1) ", 0) == 0);
}
