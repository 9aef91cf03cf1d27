#include <doctest.h>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tfmst/cer_graph.hpp"

using namespace tfmst;

namespace {

CerGraph graph_of(std::vector<std::string> nodes, const std::vector<CerPair>& edges) {
  CerGraph g(std::move(nodes));
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

using Ids = std::vector<std::string>;

}  // namespace

TEST_CASE("declared mode transcribes the cer statements") {
  auto r = parse_model("feature x { } feature y { } cer x -> y");
  REQUIRE(r.ok());
  auto g = build_cer_graph(r.model(), CerMode::kDeclared);
  CHECK(g.nodes() == Ids{"x", "y"});
  CHECK(g.matrix()(0, 1));
  CHECK_FALSE(g.matrix()(0, 0));
  CHECK_FALSE(g.matrix()(1, 0));
  CHECK_FALSE(g.matrix()(1, 1));
}

TEST_CASE("declared mode without cers is all zero") {
  auto g = build_cer_graph(fixtures::robots(), CerMode::kDeclared);
  Model m = fixtures::robots();
  m.declared_cers.clear();
  CHECK(build_cer_graph(m, CerMode::kDeclared).edges().empty());
  CHECK_FALSE(g.edges().empty());
}

TEST_CASE("inferred mode matches a brute-force Post/Pre scan of the fixture") {
  const Model m = fixtures::robots();
  auto g = build_cer_graph(m, CerMode::kInferred);
  for (const auto& x : m.features) {
    for (const auto& y : m.features) {
      bool expected = false;
      if (x.id != y.id)
        for (const auto& c : x.post) expected = expected || y.pre.count(c);
      CHECK_MESSAGE(g.has_edge(x.id, y.id) == expected, x.id << " -> " << y.id);
    }
  }
  CHECK(g.has_edge("d.1", "e.1"));
  CHECK(g.has_edge("e.1", "d.1"));
  CHECK_FALSE(g.has_edge("d.1", "e.2"));
  // The only inferred edges are the gripper open/close pairs.
  CHECK(g.edges().size() == 4);
}

TEST_CASE("inference never adds self edges, declared self edges survive") {
  auto r = parse_model("feature p { pre: A post: A } cer p -> p");
  REQUIRE(r.ok());
  CHECK_FALSE(build_cer_graph(r.model(), CerMode::kInferred).has_edge("p", "p"));
  CHECK(build_cer_graph(r.model(), CerMode::kUnion).has_edge("p", "p"));
}

TEST_CASE("union mode is the entry-wise OR") {
  const Model m = fixtures::robots();
  auto d = build_cer_graph(m, CerMode::kDeclared);
  auto i = build_cer_graph(m, CerMode::kInferred);
  auto u = build_cer_graph(m, CerMode::kUnion);
  for (std::size_t x = 0; x < u.size(); ++x)
    for (std::size_t y = 0; y < u.size(); ++y)
      CHECK(u.has_edge(x, y) == (d.has_edge(x, y) || i.has_edge(x, y)));
}

TEST_CASE("unknown ids and duplicate nodes are rejected") {
  CHECK_THROWS_AS(CerGraph(Ids{"a", "a"}), Error);
  Model m;
  m.features.push_back({});
  m.features[0].id = "a";
  m.declared_cers.emplace("a", "ghost");
  CHECK_THROWS_AS(build_cer_graph(m, CerMode::kDeclared), UnknownIdError);
}

TEST_CASE("matrix and edge list agree on random graphs") {
  std::mt19937 rng(3);
  for (int round = 0; round < 50; ++round) {
    std::uniform_int_distribution<std::size_t> size(0, 10);
    std::vector<std::string> nodes;
    const std::size_t n = size(rng);
    for (std::size_t i = 0; i < n; ++i) nodes.push_back("v" + std::to_string(i));
    std::set<std::pair<std::size_t, std::size_t>> edges;
    std::bernoulli_distribution coin(0.3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (coin(rng)) edges.emplace(i, j);
    CerGraph g(nodes);
    for (auto [i, j] : edges) g.add_edge(i, j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(g.matrix()(i, j) == (edges.count({i, j}) == 1));
    CHECK(g.edges().size() == edges.size());
  }
}

// --- cycles -----------------------------------------------------------------

TEST_CASE("two-cycle, self loop and acyclic graphs") {
  CHECK(find_functioning_cycles(graph_of({"d", "e"}, {{"d", "e"}, {"e", "d"}})) ==
        std::vector<Cycle>{{"d", "e"}});
  CHECK(find_functioning_cycles(graph_of({"x"}, {{"x", "x"}})) == std::vector<Cycle>{{"x"}});
  CHECK(find_functioning_cycles(graph_of({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}))
            .empty());
  CHECK(find_functioning_cycles(CerGraph{}).empty());
}

TEST_CASE("cycles come in canonical rotation and sorted order") {
  auto g = graph_of({"z", "m", "a"}, {{"z", "m"}, {"m", "a"}, {"a", "z"}, {"m", "z"}});
  CHECK(find_functioning_cycles(g) == std::vector<Cycle>{{"a", "z", "m"}, {"m", "z"}});
  CHECK(canonical_rotation({"c", "a", "b"}) == Cycle{"a", "b", "c"});
}

TEST_CASE("cycle enumeration matches the exhaustive oracle") {
  std::mt19937 rng(42);
  for (int round = 0; round < 150; ++round) {
    std::uniform_int_distribution<std::size_t> size(0, 8);
    std::uniform_real_distribution<double> density(0.1, 0.6);
    auto g = oracle::random_graph(rng, size(rng), density(rng));
    auto cycles = find_functioning_cycles(g);
    std::set<Cycle> as_set(cycles.begin(), cycles.end());
    CHECK(as_set.size() == cycles.size());
    CHECK(std::is_sorted(cycles.begin(), cycles.end()));
    CHECK(as_set == oracle::exhaustive_cycles(g));
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(g.has_edge(c[i], c[(i + 1) % c.size()]));
  }
}

TEST_CASE("cycle limit is an explicit error") {
  // The complete graph on 5 nodes with self loops has 89 simple cycles.
  std::vector<std::string> ids{"a", "b", "c", "d", "e"};
  CerGraph g(ids);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) g.add_edge(i, j);
  CHECK(find_functioning_cycles(g, 89).size() == 89);
  CHECK_THROWS_AS(find_functioning_cycles(g, 88), CycleLimitExceeded);
}

TEST_CASE("fixture has one gripper cycle per robot in inferred mode") {
  auto cycles = find_functioning_cycles(build_cer_graph(fixtures::robots(), CerMode::kInferred));
  CHECK(cycles == std::vector<Cycle>{{"d.1", "e.1"}, {"d.2", "e.2"}});
}

// --- subsystems ---------------------------------------------------------------

TEST_CASE("weak and strong components") {
  auto chains = graph_of({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  auto weak = find_subsystems(chains, SubsystemKind::kWeak);
  REQUIRE(weak.size() == 2);
  CHECK(weak[0].members == Ids{"a", "b"});
  CHECK(weak[1].members == Ids{"c", "d"});
  CHECK(weak[0].kind == SubsystemKind::kWeak);

  auto strong = find_subsystems(graph_of({"d", "e"}, {{"d", "e"}, {"e", "d"}}), SubsystemKind::kStrong);
  REQUIRE(strong.size() == 1);
  CHECK(strong[0].members == Ids{"d", "e"});

  CHECK(find_subsystems(CerGraph{}, SubsystemKind::kWeak).empty());
  CHECK(find_subsystems(CerGraph{}, SubsystemKind::kStrong).empty());
}

TEST_CASE("strong components equal the mutual reachability partition") {
  std::mt19937 rng(5);
  for (int round = 0; round < 100; ++round) {
    std::uniform_int_distribution<std::size_t> size(0, 8);
    auto g = oracle::random_graph(rng, size(rng), 0.25);
    auto comps = find_subsystems(g, SubsystemKind::kStrong);
    std::set<std::vector<std::string>> got;
    std::size_t covered = 0;
    for (const auto& c : comps) {
      got.insert(c.members);
      covered += c.members.size();
    }
    CHECK(covered == g.size());
    CHECK(got == oracle::mutual_reachability_classes(g));
    for (std::size_t i = 1; i < comps.size(); ++i)
      CHECK(comps[i - 1].members.front() < comps[i].members.front());

    auto weak = find_subsystems(g, SubsystemKind::kWeak);
    covered = 0;
    for (const auto& c : weak) covered += c.members.size();
    CHECK(covered == g.size());
    // Every strong component sits inside one weak component.
    for (const auto& s : comps) {
      int hosts = 0;
      for (const auto& w : weak)
        hosts += std::includes(w.members.begin(), w.members.end(), s.members.begin(), s.members.end());
      CHECK(hosts == 1);
    }
  }
}

// --- reachability -------------------------------------------------------------

TEST_CASE("reachable_from examples") {
  auto chain = graph_of({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(reachable_from(chain, "a") == std::set<std::string>{"b", "c"});
  auto two = graph_of({"d", "e"}, {{"d", "e"}, {"e", "d"}});
  CHECK(reachable_from(two, "d") == std::set<std::string>{"d", "e"});
  CHECK(reachable_from(graph_of({"x"}, {}), "x").empty());
  CHECK_THROWS_AS(reachable_from(chain, "q"), UnknownIdError);
}

TEST_CASE("transitive closure examples") {
  auto pair = graph_of({"x", "y"}, {{"x", "y"}});
  CHECK(transitive_closure(pair) == pair);
  auto chain = transitive_closure(graph_of({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  CHECK(chain.has_edge("a", "c"));
  CHECK(chain.edges().size() == 3);
  auto two = transitive_closure(graph_of({"d", "e"}, {{"d", "e"}, {"e", "d"}}));
  CHECK(two.edges().size() == 4);
}

TEST_CASE("closure agrees with the product oracle and reachable_from, is idempotent and monotone") {
  std::mt19937 rng(9);
  for (int round = 0; round < 100; ++round) {
    std::uniform_int_distribution<std::size_t> size(1, 10);
    auto g = oracle::random_graph(rng, size(rng), 0.2);
    auto closure = transitive_closure(g);
    CHECK(oracle::adjacency(closure) == oracle::product_closure(oracle::adjacency(g)));
    CHECK(transitive_closure(closure) == closure);
    for (std::size_t v = 0; v < g.size(); ++v) {
      std::set<std::string> row;
      for (std::size_t w = 0; w < g.size(); ++w)
        if (closure.has_edge(v, w)) row.insert(g.node(w));
      CHECK(reachable_from(g, g.node(v)) == row);
    }
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    auto bigger = g;
    bigger.add_edge(pick(rng), pick(rng));
    auto bigger_closure = transitive_closure(bigger);
    for (const auto& [a, b] : closure.edges()) CHECK(bigger_closure.has_edge(a, b));
  }
}

// --- interactions -------------------------------------------------------------

TEST_CASE("interaction examples") {
  auto chain = graph_of({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  auto v = check_interactions(chain, {{"a", "c"}});
  REQUIRE(v.size() == 1);
  CHECK(v[0].pair == CerPair{"a", "c"});
  CHECK(v[0].witness == Ids{"a", "b", "c"});
  CHECK(check_interactions(chain, {{"c", "a"}}).empty());
  CHECK(check_interactions(chain, {}).empty());
  CHECK_THROWS_AS(check_interactions(chain, {{"a", "zz"}}), UnknownIdError);
}

TEST_CASE("witness ties break lexicographically and self pairs need a cycle") {
  auto diamond = graph_of({"s", "q", "p", "t"}, {{"s", "q"}, {"s", "p"}, {"q", "t"}, {"p", "t"}, {"t", "s"}});
  auto v = check_interactions(diamond, {{"s", "t"}, {"s", "s"}});
  REQUIRE(v.size() == 2);
  CHECK(v[0].pair == CerPair{"s", "s"});
  CHECK(v[0].witness == Ids{"s", "p", "t", "s"});
  CHECK(v[1].witness == Ids{"s", "p", "t"});
  CHECK(check_interactions(graph_of({"x"}, {}), {{"x", "x"}}).empty());
}

TEST_CASE("interaction witnesses match the brute-force oracle") {
  std::mt19937 rng(17);
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<std::size_t> size(1, 7);
    auto g = oracle::random_graph(rng, size(rng), 0.3);
    std::set<CerPair> all;
    for (const auto& a : g.nodes())
      for (const auto& b : g.nodes()) all.emplace(a, b);
    auto violations = check_interactions(g, all);
    std::map<CerPair, Ids> by_pair;
    for (const auto& v : violations) by_pair[v.pair] = v.witness;
    for (const auto& pair : all) {
      auto expected = oracle::least_shortest_path(g, g.index_of(pair.first), g.index_of(pair.second));
      REQUIRE(by_pair.count(pair) == (expected ? 1u : 0u));
      if (expected) CHECK(by_pair[pair] == *expected);
    }
  }
}

// --- dot ----------------------------------------------------------------------

TEST_CASE("dot export") {
  Model m;
  for (const char* id : {"d", "e"}) {
    m.features.push_back({});
    m.features.back().id = id;
  }
  m.features[0].action = "Open";
  auto dot = export_dot(graph_of({"d", "e"}, {{"d", "e"}, {"e", "d"}}), m);
  CHECK(dot ==
        "digraph cer {\n"
        "  d [label=\"d: Open\"];\n"
        "  e [label=\"e\"];\n"
        "  d -> e;\n"
        "  e -> d;\n"
        "}\n");
  CHECK(export_dot(CerGraph{}, Model{}) == "digraph cer {\n}\n");
}

TEST_CASE("dot export of the inferred fixture matches the golden file") {
  const Model m = fixtures::robots();
  auto dot = export_dot(build_cer_graph(m, CerMode::kInferred), m);
  CHECK(dot == fixtures::read_file(std::string(TFMST_GOLDEN_DIR) + "/robots_inferred.dot"));
}
