#include <cmath>
#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "treecomp/errors.hpp"
#include "treecomp/graph_entropy.hpp"

using namespace treecomp;

namespace {

EntropyProblem example_problem() {
  const auto inst = fixture::point_to_point();
  const Joint joint = inst.sources.joint();
  return make_entropy_problem(joint, make_spec(joint, {"X1"}, {"X2"}), inst.function);
}

EntropyProblem problem_for(const Instance& inst, const NodeSet& l) {
  const Joint joint = inst.sources.joint();
  std::vector<std::string> ln, kn;
  for (auto u : inst.tree.nodes()) {
    (std::binary_search(l.begin(), l.end(), u) ? ln : kn).push_back(source_coord(u));
  }
  return make_entropy_problem(joint, make_spec(joint, ln, kn), inst.function);
}

// Minimum of the objective over assignments sending each letter to one set.
double best_deterministic(const EntropyProblem& problem) {
  const std::size_t n = problem.vertex_count();
  std::vector<std::vector<std::size_t>> choices(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t v = 0; v < problem.family.size(); ++v) {
      const auto& s = problem.family[v];
      if (std::binary_search(s.begin(), s.end(), l)) choices[l].push_back(v);
    }
  }
  std::vector<std::size_t> pick(n, 0);
  double best = INFINITY;
  while (true) {
    std::vector<std::vector<double>> a(n, std::vector<double>(problem.family.size(), 0.0));
    for (std::size_t l = 0; l < n; ++l) a[l][choices[l][pick[l]]] = 1.0;
    best = std::min(best, mutual_information(problem, a));
    std::size_t i = 0;
    while (i < n && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == n) break;
  }
  return best;
}

std::size_t assignment_count(const EntropyProblem& problem) {
  std::size_t count = 1;
  for (std::size_t l = 0; l < problem.vertex_count(); ++l) {
    std::size_t c = 0;
    for (const auto& s : problem.family) c += std::binary_search(s.begin(), s.end(), l);
    count *= c;
    if (count > 5000) return count;
  }
  return count;
}

}  // namespace

TEST_SUITE("graph-entropy") {
  TEST_CASE("point-to-point value and support") {
    const auto problem = example_problem();
    CHECK(conditional_entropy(problem) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    const auto s = graph_entropy(problem);
    CHECK(s.value == doctest::Approx(0.9183).epsilon(1e-3));
    CHECK(s.deterministic);
    // All mass on {1,2} and {3,4}.
    REQUIRE(problem.family == std::vector<VertexSet>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(s.assignment[0][0] == doctest::Approx(1.0));
    CHECK(s.assignment[1][0] == doctest::Approx(1.0));
    CHECK(s.assignment[2][2] == doctest::Approx(1.0));
    CHECK(s.assignment[3][2] == doctest::Approx(1.0));
  }

  TEST_CASE("oracle brackets") {
    const auto problem = example_problem();
    const auto b = graph_entropy_oracle(problem, Rational(1, 16));
    CHECK(b.lower <= 0.9183 + 1e-4);
    CHECK(b.upper >= 0.9183 - 1e-4);
    CHECK(b.upper - b.lower < 0.05);

    SolverSettings s;
    s.oracle = true;
    const auto sol = graph_entropy(problem, s);
    REQUIRE(sol.oracle.has_value());
    REQUIRE(sol.certificate.has_value());
    CHECK(*sol.certificate >= -1e-9);

    OracleLimits tiny;
    tiny.max_vertices = 2;
    CHECK_THROWS_AS(graph_entropy_oracle(problem, Rational(1, 16), tiny), GuardExceeded);
  }

  TEST_CASE("empty and complete graphs") {
    auto inst = fixture::point_to_point();
    std::map<Tuple, int> zero, ident;
    for (const auto& x : oracle::all_tuples({4, 4})) {
      zero[x] = 0;
      ident[x] = x[0];
    }
    const Instance constant(inst.tree, inst.sources, FunctionTable({"0"}, zero));
    const auto empty = problem_for(constant, {1});
    CHECK(graph_entropy(empty).value == doctest::Approx(0.0));
    const auto be = graph_entropy_oracle(empty, Rational(1, 16));
    CHECK(be.lower == doctest::Approx(0.0));
    CHECK(be.upper == doctest::Approx(0.0));

    const Instance identity(inst.tree, inst.sources, FunctionTable(oracle::letters(4), ident));
    const auto complete = problem_for(identity, {1});
    const double h = conditional_entropy(complete);
    CHECK(graph_entropy(complete).value == doctest::Approx(h));
    const auto bc = graph_entropy_oracle(complete, Rational(1, 16));
    CHECK(bc.lower == doctest::Approx(h));
    CHECK(bc.upper == doctest::Approx(h));
    CHECK(bc.points == 1);
  }

  TEST_CASE("uniform letters with no side information") {
    Pmf pmf;
    std::map<Tuple, int> f;
    for (int a = 0; a < 4; ++a) {
      pmf[{a, 0}] = Rational(1, 4);
      f[{a, 0}] = a;
    }
    const Instance inst(RootedTree({1, 2}, {{1, 2}}, 2),
                        SourceModel({1, 2}, {oracle::letters(4), {"0"}}, pmf),
                        FunctionTable(oracle::letters(4), f));
    CHECK(conditional_entropy(problem_for(inst, {1})) == doctest::Approx(2.0));
    // X1 is a copy of X2.
    CHECK(conditional_entropy(problem_for(fixture::copied_leaves(), {1})) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("uncovered vertex") {
    const auto inst = fixture::point_to_point();
    const Joint joint = inst.sources.joint();
    const auto spec = make_spec(joint, {"X1"}, {"X2"});
    const auto g = build_char_graph(joint, spec, inst.function);
    const auto problem = make_entropy_problem(joint, spec, g, {{0, 1}, {2}});
    CHECK_THROWS_AS(graph_entropy(problem), InputError);
  }

  TEST_CASE("random problems: bounds, monotone history and constraints") {
    std::mt19937_64 rng(41);
    int checked_deterministic = 0;
    for (int trial = 0; trial < 80; ++trial) {
      const auto inst = oracle::random_markov_instance(rng);
      for (auto u : inst.tree.nodes()) {
        if (u == inst.tree.root()) continue;
        const auto problem = problem_for(inst, inst.tree.child(u));
        if (problem.vertex_count() > 27) continue;
        const auto s = graph_entropy(problem);
        CHECK(s.value >= -1e-12);
        CHECK(s.value <= conditional_entropy(problem) + 1e-9);
        CHECK(s.value == doctest::Approx(mutual_information(problem, s.assignment)).epsilon(1e-9));
        for (std::size_t i = 1; i < s.history.size(); ++i) {
          CHECK(s.history[i] <= s.history[i - 1] + 1e-12);
        }
        for (std::size_t l = 0; l < s.assignment.size(); ++l) {
          double sum = 0.0;
          for (std::size_t v = 0; v < problem.family.size(); ++v) {
            sum += s.assignment[l][v];
            const auto& set = problem.family[v];
            if (!std::binary_search(set.begin(), set.end(), l)) CHECK(s.assignment[l][v] == 0.0);
          }
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
        if (assignment_count(problem) <= 5000) {
          ++checked_deterministic;
          CHECK(best_deterministic(problem) >= s.value - 1e-9);
        }
      }
    }
    CHECK(checked_deterministic > 50);
  }

  TEST_CASE("removing an edge never increases the value") {
    std::mt19937_64 rng(43);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const auto inst = oracle::random_markov_instance(rng);
      const auto& nodes = inst.tree.nodes();
      for (auto u : nodes) {
        if (u == inst.tree.root()) continue;
        const auto base = problem_for(inst, inst.tree.child(u));
        const auto edges = base.graph.edges();
        if (edges.empty() || base.vertex_count() > 12) continue;
        const auto [a, b] = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
        auto graph = base.graph;
        graph.remove_edge(a, b);
        const Joint joint = inst.sources.joint();
        std::vector<std::string> ln, kn;
        const auto l = inst.tree.child(u);
        for (auto v : nodes) {
          (std::binary_search(l.begin(), l.end(), v) ? ln : kn).push_back(source_coord(v));
        }
        const auto family = maximal_independent_sets(graph).sets;
        const auto looser =
            make_entropy_problem(joint, make_spec(joint, ln, kn), graph, family);
        CHECK(graph_entropy(looser).value <= graph_entropy(base).value + 1e-9);
        ++compared;
      }
    }
    CHECK(compared > 20);
  }
}
