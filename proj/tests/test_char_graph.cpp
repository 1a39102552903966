#include <random>
#include <set>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "treecomp/char_graph.hpp"
#include "treecomp/errors.hpp"

using namespace treecomp;

namespace {

std::vector<std::string> coord_names(const NodeSet& ids) {
  std::vector<std::string> out;
  for (auto u : ids) out.push_back(source_coord(u));
  return out;
}

CharGraph graph_of(const Instance& inst, const NodeSet& l, const NodeSet& k) {
  const Joint joint = inst.sources.joint();
  return build_char_graph(joint, make_spec(joint, coord_names(l), coord_names(k)),
                          inst.function);
}

CharGraph example_graph() { return graph_of(fixture::point_to_point(), {1}, {2}); }

CharGraph from_adjacency(const std::vector<std::vector<bool>>& adj) {
  auto g = CharGraph::plain(oracle::letters(static_cast<int>(adj.size())));
  for (std::size_t a = 0; a < adj.size(); ++a) {
    for (std::size_t b = a + 1; b < adj.size(); ++b) {
      if (adj[a][b]) g.add_edge(a, b);
    }
  }
  return g;
}

std::vector<std::vector<bool>> random_adjacency(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) adj[a][b] = adj[b][a] = coin(rng);
  }
  return adj;
}

std::set<std::vector<std::size_t>> brute_independent(const std::vector<std::vector<bool>>& adj) {
  std::set<std::vector<std::size_t>> out;
  const std::size_t n = adj.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    bool ok = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      for (auto w : s) ok = ok && !adj[v][w];
      s.push_back(v);
    }
    if (ok) out.insert(s);
  }
  return out;
}

NodeSet complement(const NodeSet& all, const NodeSet& s) { return set_difference(all, s); }

}  // namespace

TEST_SUITE("char-graph") {
  TEST_CASE("point-to-point graph, independent sets and overlap") {
    const auto g = example_graph();
    CHECK(g.vertex_count() == 4);
    CHECK(g.label(0) == "1");
    const std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 2}, {0, 3}, {1, 3}};
    CHECK(g.edges() == edges);

    const std::vector<VertexSet> all{{0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}};
    CHECK(independent_sets(g).sets == all);
    const auto mis = maximal_independent_sets(g);
    CHECK(mis.kind == SetKind::kMaximalIndependent);
    CHECK(mis.sets == std::vector<VertexSet>{{0, 1}, {1, 2}, {2, 3}});

    const auto part = check_partition(mis, g);
    CHECK_FALSE(part.is_partition);
    REQUIRE(part.overlap.has_value());
    CHECK(part.overlap->vertex == 1);
    CHECK(part.overlap->first == VertexSet{0, 1});
    CHECK(part.overlap->second == VertexSet{1, 2});
  }

  TEST_CASE("graph comparison") {
    const auto g = example_graph();
    CHECK(graph_equal(g, g));
    auto h = g;
    h.remove_edge(1, 3);
    CHECK_FALSE(graph_equal(g, h));
    CHECK(compare_graphs(g, h) == GraphComparison::kEdgeMismatch);
    CHECK(compare_graphs(g, CharGraph::plain({"a", "b"})) == GraphComparison::kVertexMismatch);
  }

  TEST_CASE("constant and identity functions") {
    auto inst = fixture::point_to_point();
    std::map<Tuple, int> zero, ident;
    Pmf full;
    for (const auto& x : oracle::all_tuples({4, 4})) {
      zero[x] = 0;
      ident[x] = x[0];
      full[x] = Rational(1, 16);
    }
    const Instance constant(inst.tree, inst.sources, FunctionTable({"0"}, zero));
    CHECK(graph_of(constant, {1}, {2}).edge_count() == 0);

    const Instance identity(inst.tree, SourceModel({1, 2}, {oracle::letters(4), oracle::letters(4)}, full),
                            FunctionTable(oracle::letters(4), ident));
    CHECK(graph_of(identity, {1}, {2}).edge_count() == 6);
  }

  TEST_CASE("undetermined function is an input error") {
    const auto inst = fixture::point_to_point();
    const Joint joint = inst.sources.joint();
    CHECK_THROWS_AS(build_char_graph(joint, make_spec(joint, {"X1"}, {}), inst.function),
                    InputError);
  }

  TEST_CASE("vertex cap") {
    const auto inst = fixture::point_to_point();
    const Joint joint = inst.sources.joint();
    GraphLimits tight;
    tight.max_vertices = 3;
    CHECK_THROWS_AS(
        build_char_graph(joint, make_spec(joint, {"X1"}, {"X2"}), inst.function, tight),
        GuardExceeded);
  }

  TEST_CASE("small fixed graphs") {
    const auto k3 = from_adjacency({{false, true, true}, {true, false, true}, {true, true, false}});
    CHECK(independent_sets(k3).sets == std::vector<VertexSet>{{0}, {1}, {2}});

    const auto empty = CharGraph::plain({"a", "b"});
    CHECK(independent_sets(empty).sets == std::vector<VertexSet>{{0}, {1}, {0, 1}});
    CHECK(maximal_independent_sets(empty).sets == std::vector<VertexSet>{{0, 1}});
    CHECK(check_partition(maximal_independent_sets(empty), empty).is_partition);

    const auto cycle = from_adjacency({{false, true, false, true},
                                       {true, false, true, false},
                                       {false, true, false, true},
                                       {true, false, true, false}});
    CHECK(maximal_independent_sets(cycle).sets == std::vector<VertexSet>{{0, 2}, {1, 3}});
    CHECK(check_partition(maximal_independent_sets(cycle), cycle).is_partition);
  }

  TEST_CASE("random graphs: enumeration matches subset scan") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
      const double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      const auto adj = random_adjacency(rng, n, density);
      const auto g = from_adjacency(adj);

      const auto mis = maximal_independent_sets(g).sets;
      const std::set<std::vector<std::size_t>> got(mis.begin(), mis.end());
      CHECK(got.size() == mis.size());
      CHECK(got == oracle::brute_maximal_sets(adj));
      CHECK(std::is_sorted(mis.begin(), mis.end()));
      for (const auto& s : mis) CHECK(is_independent(g, s));

      if (n <= 10) {
        const auto ind = independent_sets(g).sets;
        CHECK(std::set<std::vector<std::size_t>>(ind.begin(), ind.end()) ==
              brute_independent(adj));
      }
    }
    // Fifteen vertices, sparse.
    const auto adj = random_adjacency(rng, 15, 0.2);
    const auto mis = maximal_independent_sets(from_adjacency(adj)).sets;
    CHECK(std::set<std::vector<std::size_t>>(mis.begin(), mis.end()) ==
          oracle::brute_maximal_sets(adj));
  }

  TEST_CASE("random instances: edges follow the definition") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
      const auto inst = oracle::random_markov_instance(rng);
      const auto& nodes = inst.tree.nodes();
      for (auto u : nodes) {
        const NodeSet l = inst.tree.child(u);
        const NodeSet k = complement(nodes, l);
        const auto g = graph_of(inst, l, k);
        std::set<std::pair<Tuple, Tuple>> got;
        for (const auto& [a, b] : g.edges()) got.emplace(g.letter(a), g.letter(b));
        CHECK(got == oracle::brute_edges(inst, l, k));

        const auto marg = inst.sources.marginal(l);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
          const bool positive = marg.count(g.letter(v)) > 0;
          CHECK(g.in_support(v) == positive);
          if (!positive) CHECK(g.degree(v) == 0);
        }
      }
    }
  }

  TEST_CASE("removing support never adds edges") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
      const auto inst = oracle::random_markov_instance(rng);
      if (inst.sources.pmf().size() < 2) continue;
      Pmf thinned;
      Rational kept = 0;
      std::bernoulli_distribution keep(0.7);
      for (const auto& [x, p] : inst.sources.pmf()) {
        if (thinned.empty() || keep(rng)) {
          thinned[x] = p;
          kept += p;
        }
      }
      for (auto& [x, p] : thinned) p /= kept;
      std::vector<std::vector<std::string>> alpha;
      for (auto u : inst.sources.node_ids()) alpha.push_back(inst.sources.alphabet(u));
      const Instance smaller(inst.tree, SourceModel(inst.sources.node_ids(), alpha, thinned),
                             inst.function);
      const auto& nodes = inst.tree.nodes();
      for (auto u : nodes) {
        const NodeSet l = inst.tree.child(u);
        const auto big = graph_of(inst, l, complement(nodes, l));
        const auto small = graph_of(smaller, l, complement(nodes, l));
        for (const auto& [a, b] : small.edges()) CHECK(big.adjacent(a, b));
      }
    }
  }

  TEST_CASE("independent sides give a partition") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 80; ++trial) {
      const auto inst = oracle::random_independent_instance(rng);
      const auto& nodes = inst.tree.nodes();
      for (auto u : nodes) {
        const NodeSet l = inst.tree.child(u);
        const auto g = graph_of(inst, l, complement(nodes, l));
        const auto part = check_partition(maximal_independent_sets(g), g);
        CHECK(part.is_partition);
        CHECK_FALSE(part.uncovered.has_value());
      }
    }
  }
}
