#ifndef TREECOMP_GRAPH_ENTROPY_HPP_
#define TREECOMP_GRAPH_ENTROPY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "treecomp/char_graph.hpp"
#include "treecomp/rational.hpp"

namespace treecomp {

// Minimise I(V; L | K) over p(v | l) with l in v, v drawn from `family`.
struct EntropyProblem {
  struct Cell {
    std::size_t l;
    std::size_t k;
    Rational p;
  };

  CharGraph graph;
  std::size_t side_count = 0;  // number of distinct k with positive mass
  std::vector<Cell> cells;     // positive-probability (l, k) pairs
  std::vector<VertexSet> family;

  std::size_t vertex_count() const { return graph.vertex_count(); }
};

// Problem for an already-built graph and family.
EntropyProblem make_entropy_problem(const Joint& joint, const CompositeSpec& spec, CharGraph graph,
                                    std::vector<VertexSet> family);

// Builds G_{L|K} and minimises over its maximal independent sets.
EntropyProblem make_entropy_problem(const Joint& joint, const CompositeSpec& spec,
                                    const FunctionTable& f, const GraphLimits& limits = {});

struct OracleLimits {
  std::size_t max_vertices = 6;
  std::size_t max_family = 4;
  std::size_t max_points = 5'000'000;
};

struct SolverSettings {
  Rational grid_step{1, 8};
  int restarts = 16;
  int max_iterations = 20000;
  double tolerance = 1e-9;
  bool oracle = false;
  Rational oracle_step{1, 16};
  OracleLimits oracle_limits;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  // Deterministic assignments are enumerated exhaustively up to this count.
  std::size_t max_deterministic = 1 << 16;
  // A deterministic assignment within this many bits of the best found is
  // preferred.
  double deterministic_slack = 1e-9;
};

struct OracleBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::vector<double>> argmin;
  std::size_t points = 0;
};

struct EntropySolution {
  double value = 0.0;
  // assignment[l][v] = p(v | l), v indexing problem.family.
  std::vector<std::vector<double>> assignment;
  bool deterministic = false;
  std::optional<double> certificate;
  std::optional<OracleBracket> oracle;
  int iterations = 0;
  // Objective per iteration of the restart that produced the best value.
  std::vector<double> history;
};

// H(L | K) in bits.
double conditional_entropy(const EntropyProblem& problem);

// I(V; L | K) for a given assignment (rows indexed by l, columns by family).
double mutual_information(const EntropyProblem& problem,
                          const std::vector<std::vector<double>>& assignment);

EntropySolution graph_entropy(const EntropyProblem& problem, const SolverSettings& settings = {});

// Exhaustive grid evaluation. `upper` is the grid minimum; `lower` is a
// supporting-hyperplane bound valid because the objective is convex in
// p(v | l).
OracleBracket graph_entropy_oracle(const EntropyProblem& problem, const Rational& grid_step,
                                   const OracleLimits& limits = {});

}  // namespace treecomp

#endif  // TREECOMP_GRAPH_ENTROPY_HPP_
