// Random instance generators and brute-force reference computations shared by
// the unit and acceptance tests. Nothing here calls the library algorithms it
// is used to check.
#ifndef TREECOMP_TESTS_ORACLES_HPP_
#define TREECOMP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "treecomp/source_model.hpp"

namespace oracle {

using treecomp::Edge;
using treecomp::FunctionTable;
using treecomp::Instance;
using treecomp::NodeId;
using treecomp::NodeSet;
using treecomp::Pmf;
using treecomp::Rational;
using treecomp::RootedTree;
using treecomp::SourceModel;
using treecomp::Tuple;

inline std::vector<std::string> letters(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

// Every tuple of the mixed-radix space, first coordinate most significant.
inline std::vector<Tuple> all_tuples(const std::vector<int>& radix) {
  std::vector<Tuple> out{{}};
  for (int r : radix) {
    std::vector<Tuple> next;
    for (const auto& t : out) {
      for (int a = 0; a < r; ++a) {
        auto e = t;
        e.push_back(a);
        next.push_back(e);
      }
    }
    out = std::move(next);
  }
  return out;
}

// Random non-negative integer weights normalised to a rational pmf. With
// `zeros`, entries are dropped with probability 1/4 (at least one survives).
inline std::vector<Rational> random_pmf(std::mt19937_64& rng, int n, bool zeros) {
  std::uniform_int_distribution<int> w(1, 4);
  std::bernoulli_distribution drop(0.25);
  std::vector<int> weights(static_cast<std::size_t>(n));
  for (auto& x : weights) x = (zeros && drop(rng)) ? 0 : w(rng);
  if (std::all_of(weights.begin(), weights.end(), [](int x) { return x == 0; })) {
    weights[std::uniform_int_distribution<std::size_t>(0, weights.size() - 1)(rng)] = 1;
  }
  int total = 0;
  for (int x : weights) total += x;
  std::vector<Rational> out;
  for (int x : weights) {
    Rational r(x, total);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

struct RandomTree {
  std::vector<NodeId> ids;
  std::vector<Edge> edges;
  NodeId root;
  std::map<NodeId, NodeId> parent;
};

// Ids 1..n assigned in random order; each later node attaches to an earlier.
inline RandomTree random_tree(std::mt19937_64& rng, int n) {
  RandomTree t;
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  t.root = order[0];
  for (std::size_t i = 1; i < order.size(); ++i) {
    const NodeId p = order[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)];
    t.edges.emplace_back(order[i], p);
    t.parent[order[i]] = p;
  }
  t.ids = order;
  std::sort(t.ids.begin(), t.ids.end());
  return t;
}

inline FunctionTable random_function(std::mt19937_64& rng, const std::vector<int>& radix,
                                     int outputs) {
  std::uniform_int_distribution<int> pick(0, outputs - 1);
  std::map<Tuple, int> table;
  for (const auto& t : all_tuples(radix)) table[t] = pick(rng);
  return FunctionTable(letters(outputs), std::move(table));
}

struct RandomOptions {
  int max_nodes = 5;
  int max_alphabet = 3;
  bool zeros = true;
  int outputs = 3;
};

// p(x_r) * prod p(x_u | x_out(u)) with random rational factors.
inline Instance random_markov_instance(std::mt19937_64& rng, const RandomOptions& o = {}) {
  const int n = std::uniform_int_distribution<int>(2, o.max_nodes)(rng);
  const RandomTree t = random_tree(rng, n);
  std::vector<int> radix;
  for (std::size_t i = 0; i < t.ids.size(); ++i) {
    radix.push_back(std::uniform_int_distribution<int>(1, o.max_alphabet)(rng));
  }
  auto index = [&](NodeId u) {
    return static_cast<std::size_t>(std::lower_bound(t.ids.begin(), t.ids.end(), u) - t.ids.begin());
  };
  const auto root_pmf = random_pmf(rng, radix[index(t.root)], o.zeros);
  std::map<std::pair<NodeId, int>, std::vector<Rational>> cond;
  for (const auto& [u, p] : t.parent) {
    for (int a = 0; a < radix[index(p)]; ++a) cond[{u, a}] = random_pmf(rng, radix[index(u)], o.zeros);
  }
  Pmf pmf;
  for (const auto& x : all_tuples(radix)) {
    Rational q = root_pmf[static_cast<std::size_t>(x[index(t.root)])];
    for (const auto& [u, p] : t.parent) {
      q *= cond[{u, x[index(p)]}][static_cast<std::size_t>(x[index(u)])];
    }
    if (sgn(q) > 0) pmf[x] = q;
  }
  std::vector<std::vector<std::string>> alphabets;
  for (int r : radix) alphabets.push_back(letters(r));
  return Instance(RootedTree(t.ids, t.edges, t.root), SourceModel(t.ids, alphabets, pmf),
                  random_function(rng, radix, o.outputs));
}

inline Instance random_independent_instance(std::mt19937_64& rng, const RandomOptions& o = {}) {
  const int n = std::uniform_int_distribution<int>(2, o.max_nodes)(rng);
  const RandomTree t = random_tree(rng, n);
  std::vector<int> radix;
  std::vector<std::vector<Rational>> marg;
  for (std::size_t i = 0; i < t.ids.size(); ++i) {
    radix.push_back(std::uniform_int_distribution<int>(1, o.max_alphabet)(rng));
    marg.push_back(random_pmf(rng, radix.back(), o.zeros));
  }
  Pmf pmf;
  for (const auto& x : all_tuples(radix)) {
    Rational q = 1;
    for (std::size_t i = 0; i < x.size(); ++i) q *= marg[i][static_cast<std::size_t>(x[i])];
    if (sgn(q) > 0) pmf[x] = q;
  }
  std::vector<std::vector<std::string>> alphabets;
  for (int r : radix) alphabets.push_back(letters(r));
  return Instance(RootedTree(t.ids, t.edges, t.root), SourceModel(t.ids, alphabets, pmf),
                  random_function(rng, radix, o.outputs));
}

// Edges of G_{X_L | X_K} straight from the definition: pairs of support
// tuples agreeing on K with different function values.
inline std::set<std::pair<Tuple, Tuple>> brute_edges(const Instance& inst, const NodeSet& l,
                                                     const NodeSet& k) {
  const auto& src = inst.sources;
  auto pick = [&](const Tuple& x, const NodeSet& ids) {
    Tuple t;
    for (auto u : ids) t.push_back(x[src.index_of(u)]);
    return t;
  };
  std::set<std::pair<Tuple, Tuple>> edges;
  for (const auto& [x1, p1] : src.pmf()) {
    for (const auto& [x2, p2] : src.pmf()) {
      if (pick(x1, k) != pick(x2, k)) continue;
      const Tuple a = pick(x1, l), b = pick(x2, l);
      if (a < b && inst.function.at(x1) != inst.function.at(x2)) edges.emplace(a, b);
    }
  }
  return edges;
}

// Maximal independent sets by subset enumeration; `adj` is an adjacency
// matrix on up to ~15 vertices.
inline std::set<std::vector<std::size_t>> brute_maximal_sets(
    const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  std::vector<unsigned> independent;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = a + 1; b < n && ok; ++b) {
        if ((mask >> a & 1) && (mask >> b & 1) && adj[a][b]) ok = false;
      }
    }
    if (ok) independent.push_back(mask);
  }
  std::set<std::vector<std::size_t>> out;
  for (unsigned m : independent) {
    const bool maximal = std::none_of(independent.begin(), independent.end(),
                                      [&](unsigned o) { return o != m && (o & m) == m; });
    if (!maximal) continue;
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v) {
      if (m >> v & 1) s.push_back(v);
    }
    out.insert(s);
  }
  return out;
}

inline double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

// Direct product-form check p(x) = p(x_r) prod p(x_u | x_out).
inline bool product_form_holds(const Instance& inst) {
  const auto& tree = inst.tree;
  const auto& src = inst.sources;
  std::map<std::pair<NodeId, Tuple>, Rational> pair_mass;
  std::map<std::pair<NodeId, int>, Rational> single;
  for (const auto& [x, p] : src.pmf()) {
    for (auto u : tree.nodes()) {
      single[{u, x[src.index_of(u)]}] += p;
      if (auto o = tree.out(u)) pair_mass[{u, {x[src.index_of(u)], x[src.index_of(*o)]}}] += p;
    }
  }
  std::vector<int> radix;
  for (auto u : src.node_ids()) radix.push_back(static_cast<int>(src.alphabet(u).size()));
  for (const auto& x : all_tuples(radix)) {
    Rational q = single[{tree.root(), x[src.index_of(tree.root())]}];
    for (auto u : tree.nodes()) {
      auto o = tree.out(u);
      if (!o || sgn(q) == 0) continue;
      const Rational po = single[{*o, x[src.index_of(*o)]}];
      if (sgn(po) == 0) {
        q = 0;
        continue;
      }
      q *= pair_mass[{u, {x[src.index_of(u)], x[src.index_of(*o)]}}] / po;
    }
    if (q != src.probability(x)) return false;
  }
  return true;
}

}  // namespace oracle

#endif  // TREECOMP_TESTS_ORACLES_HPP_
