#include "treecomp/graph_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "treecomp/errors.hpp"

namespace treecomp {

EntropyProblem make_entropy_problem(const Joint& joint, const CompositeSpec& spec, CharGraph graph,
                                    std::vector<VertexSet> family) {
  EntropyProblem problem;
  const std::size_t nl = spec.l_coords.size();
  std::map<Tuple, std::size_t> k_index;
  for (const auto& [key, p] : joint.marginal(concat(spec.l_coords, spec.k_coords))) {
    const Tuple l(key.begin(), key.begin() + static_cast<long>(nl));
    const Tuple k(key.begin() + static_cast<long>(nl), key.end());
    const auto [it, fresh] = k_index.emplace(k, k_index.size());
    problem.cells.push_back({graph.vertex(l), it->second, p});
  }
  problem.side_count = k_index.size();
  problem.graph = std::move(graph);
  problem.family = std::move(family);
  return problem;
}

EntropyProblem make_entropy_problem(const Joint& joint, const CompositeSpec& spec,
                                    const FunctionTable& f, const GraphLimits& limits) {
  CharGraph g = build_char_graph(joint, spec, f, limits);
  auto fam = maximal_independent_sets(g, limits);
  return make_entropy_problem(joint, spec, std::move(g), std::move(fam.sets));
}

namespace {

using Matrix = std::vector<std::vector<double>>;

// Precomputed marginals shared by the solver and the oracle.
struct Marginals {
  explicit Marginals(const EntropyProblem& problem) {
    const std::size_t n = problem.vertex_count();
    p_l.assign(n, 0.0);
    p_k.assign(problem.side_count, 0.0);
    std::vector<Rational> exact_l(n), exact_k(problem.side_count);
    for (const auto& c : problem.cells) {
      exact_l[c.l] += c.p;
      exact_k[c.k] += c.p;
    }
    for (std::size_t l = 0; l < n; ++l) p_l[l] = exact_l[l].get_d();
    for (std::size_t k = 0; k < problem.side_count; ++k) p_k[k] = exact_k[k].get_d();
    for (const auto& c : problem.cells) {
      cells.push_back({c.l, c.k, c.p.get_d(), Rational(c.p / exact_k[c.k]).get_d(),
                       Rational(c.p / exact_l[c.l]).get_d()});
    }
    candidates.assign(n, {});
    for (std::size_t v = 0; v < problem.family.size(); ++v) {
      for (auto l : problem.family[v]) candidates[l].push_back(v);
    }
    for (std::size_t l = 0; l < n; ++l) {
      if (p_l[l] > 0.0 && candidates[l].empty()) {
        throw InputError("vertex " + problem.graph.label(l) +
                         " has positive probability but no set in the family contains it");
      }
      if (p_l[l] > 0.0 && candidates[l].size() > 1) free_rows.push_back(l);
    }
  }

  struct Cell {
    std::size_t l, k;
    double p;         // p(l, k)
    double l_given_k; // p(l | k)
    double k_given_l; // p(k | l)
  };
  std::vector<double> p_l, p_k;
  std::vector<Cell> cells;
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> free_rows;
};

// Rows with a single candidate, or zero probability, get their first
// covering set with probability one.
Matrix fixed_start(const EntropyProblem& problem, const Marginals& m) {
  Matrix a(problem.vertex_count(), std::vector<double>(problem.family.size(), 0.0));
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (!m.candidates[l].empty()) a[l][m.candidates[l][0]] = 1.0;
  }
  return a;
}

Matrix posterior(const EntropyProblem& problem, const Marginals& m, const Matrix& a) {
  Matrix q(problem.side_count, std::vector<double>(problem.family.size(), 0.0));
  for (const auto& c : m.cells) {
    for (auto v : m.candidates[c.l]) q[c.k][v] += c.l_given_k * a[c.l][v];
  }
  return q;
}

// Divergence form: sum p(l,k) p(v|l) log p(v|l) / p(v|k).
double objective(const EntropyProblem& problem, const Marginals& m, const Matrix& a) {
  const Matrix q = posterior(problem, m, a);
  double total = 0.0;
  for (const auto& c : m.cells) {
    for (auto v : m.candidates[c.l]) {
      const double x = a[c.l][v];
      if (x > 0.0) total += c.p * x * std::log2(x / q[c.k][v]);
    }
  }
  return std::max(total, 0.0);
}

// One alternating-minimisation step: with p(v|k) fixed, the optimal row is
// p(v|l) proportional to exp(sum_k p(k|l) log p(v|k)).
Matrix am_step(const EntropyProblem& problem, const Marginals& m, const Matrix& a) {
  const Matrix q = posterior(problem, m, a);
  std::vector<std::vector<double>> log_weight(problem.vertex_count());
  std::vector<std::vector<bool>> dead(problem.vertex_count());
  for (auto l : m.free_rows) {
    log_weight[l].assign(problem.family.size(), 0.0);
    dead[l].assign(problem.family.size(), false);
  }
  for (const auto& c : m.cells) {
    if (log_weight[c.l].empty()) continue;
    for (auto v : m.candidates[c.l]) {
      if (q[c.k][v] <= 0.0) {
        dead[c.l][v] = true;
      } else {
        log_weight[c.l][v] += c.k_given_l * std::log2(q[c.k][v]);
      }
    }
  }
  Matrix next = a;
  for (auto l : m.free_rows) {
    double top = -std::numeric_limits<double>::infinity();
    for (auto v : m.candidates[l]) {
      if (!dead[l][v]) top = std::max(top, log_weight[l][v]);
    }
    double norm = 0.0;
    for (auto v : m.candidates[l]) {
      next[l][v] = dead[l][v] ? 0.0 : std::exp2(log_weight[l][v] - top);
      norm += next[l][v];
    }
    for (auto v : m.candidates[l]) next[l][v] /= norm;
  }
  return next;
}

// Uniformly random composition of `total` into `parts` non-negative parts.
std::vector<int> random_composition(int total, std::size_t parts, std::mt19937_64& rng) {
  std::vector<int> bars;
  std::vector<int> slots(static_cast<std::size_t>(total) + parts - 1);
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
  std::shuffle(slots.begin(), slots.end(), rng);
  bars.assign(slots.begin(), slots.begin() + static_cast<long>(parts - 1));
  std::sort(bars.begin(), bars.end());
  std::vector<int> out;
  int prev = -1;
  for (int b : bars) {
    out.push_back(b - prev - 1);
    prev = b;
  }
  out.push_back(static_cast<int>(slots.size()) - prev - 1);
  return out;
}

int grid_divisions(const Rational& step) {
  if (sgn(step) <= 0 || step > 1 || step.get_num() != 1 || !step.get_den().fits_sint_p()) {
    throw InputError("grid step must be of the form 1/N");
  }
  return static_cast<int>(step.get_den().get_si());
}

bool is_deterministic(const Matrix& a) {
  for (const auto& row : a) {
    for (double x : row) {
      if (x != 0.0 && x != 1.0) return false;
    }
  }
  return true;
}

}  // namespace

double conditional_entropy(const EntropyProblem& problem) {
  std::vector<Rational> joint, side(problem.side_count);
  for (const auto& c : problem.cells) {
    joint.push_back(c.p);
    side[c.k] += c.p;
  }
  const double h = entropy_bits(joint) - entropy_bits(side);
  return std::max(h, 0.0);
}

double mutual_information(const EntropyProblem& problem, const Matrix& assignment) {
  const Marginals m(problem);
  return objective(problem, m, assignment);
}

EntropySolution graph_entropy(const EntropyProblem& problem, const SolverSettings& settings) {
  const Marginals m(problem);
  const int divisions = grid_divisions(settings.grid_step);
  EntropySolution best;
  best.value = std::numeric_limits<double>::infinity();

  const Matrix base = fixed_start(problem, m);
  if (m.free_rows.empty()) {
    best.assignment = base;
    best.value = objective(problem, m, base);
    best.history = {best.value};
  } else {
    std::mt19937_64 rng(settings.seed);
    const int restarts = std::max(settings.restarts, 1);
    for (int r = 0; r < restarts; ++r) {
      Matrix a = base;
      for (auto l : m.free_rows) {
        const auto& cand = m.candidates[l];
        a[l].assign(problem.family.size(), 0.0);
        if (r == 0) {
          for (auto v : cand) a[l][v] = 1.0 / static_cast<double>(cand.size());
        } else {
          const auto parts = random_composition(divisions, cand.size(), rng);
          for (std::size_t i = 0; i < cand.size(); ++i) {
            a[l][cand[i]] = parts[i] / static_cast<double>(divisions);
          }
        }
      }
      std::vector<double> history{objective(problem, m, a)};
      int it = 0;
      while (it < settings.max_iterations) {
        Matrix next = am_step(problem, m, a);
        const double value = objective(problem, m, next);
        ++it;
        const double drop = history.back() - value;
        if (value <= history.back()) {
          a = std::move(next);
          history.push_back(value);
        }
        if (drop < settings.tolerance) break;
      }
      best.iterations += it;
      if (history.back() < best.value) {
        best.value = history.back();
        best.assignment = a;
        best.history = std::move(history);
      }
    }

    // Deterministic candidates: the rounded best, then exhaustive search.
    Matrix snapped = best.assignment;
    for (auto l : m.free_rows) {
      const auto& cand = m.candidates[l];
      auto top = *std::max_element(cand.begin(), cand.end(), [&](auto x, auto y) {
        return snapped[l][x] < snapped[l][y];
      });
      std::fill(snapped[l].begin(), snapped[l].end(), 0.0);
      snapped[l][top] = 1.0;
    }
    Matrix det_best = snapped;
    double det_value = objective(problem, m, snapped);

    double combos = 1.0;
    for (auto l : m.free_rows) combos *= static_cast<double>(m.candidates[l].size());
    if (combos <= static_cast<double>(settings.max_deterministic)) {
      std::vector<std::size_t> choice(m.free_rows.size(), 0);
      Matrix a = base;
      while (true) {
        for (std::size_t i = 0; i < m.free_rows.size(); ++i) {
          const auto l = m.free_rows[i];
          std::fill(a[l].begin(), a[l].end(), 0.0);
          a[l][m.candidates[l][choice[i]]] = 1.0;
        }
        const double value = objective(problem, m, a);
        if (value < det_value) {
          det_value = value;
          det_best = a;
        }
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == m.candidates[m.free_rows[i]].size()) {
          choice[i++] = 0;
        }
        if (i == choice.size()) break;
      }
    }
    if (det_value <= best.value + settings.deterministic_slack) {
      best.value = det_value;
      best.assignment = std::move(det_best);
    }
  }
  best.deterministic = is_deterministic(best.assignment);

  if (settings.oracle && problem.vertex_count() <= settings.oracle_limits.max_vertices &&
      problem.family.size() <= settings.oracle_limits.max_family) {
    best.oracle = graph_entropy_oracle(problem, settings.oracle_step, settings.oracle_limits);
    best.certificate = std::max(best.value - best.oracle->lower, 0.0);
  }
  return best;
}

namespace {

// Entropy-difference form H(V | K) - H(V | L); kept separate from the
// solver's divergence form so the oracle checks it independently.
double oracle_objective(const EntropyProblem& problem, const Marginals& m, const Matrix& a) {
  const std::size_t nv = problem.family.size();
  std::vector<double> vk(problem.side_count * nv, 0.0);
  for (const auto& c : m.cells) {
    for (std::size_t v = 0; v < nv; ++v) vk[c.k * nv + v] += c.p * a[c.l][v];
  }
  double h_vk = 0.0;
  for (std::size_t k = 0; k < problem.side_count; ++k) {
    for (std::size_t v = 0; v < nv; ++v) {
      const double p = vk[k * nv + v];
      if (p > 0.0) h_vk -= p * std::log2(p / m.p_k[k]);
    }
  }
  double h_vl = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (m.p_l[l] <= 0.0) continue;
    for (double x : a[l]) {
      if (x > 0.0) h_vl -= m.p_l[l] * x * std::log2(x);
    }
  }
  return h_vk - h_vl;
}

// f(x) + min over the feasible polytope of grad f(x) . (y - x); a lower bound
// on the minimum of a convex f. Requires x interior on the free rows.
double supporting_bound(const EntropyProblem& problem, const Marginals& m, const Matrix& a) {
  const std::size_t nv = problem.family.size();
  Matrix q(problem.side_count, std::vector<double>(nv, 0.0));
  for (const auto& c : m.cells) {
    for (std::size_t v = 0; v < nv; ++v) q[c.k][v] += c.l_given_k * a[c.l][v];
  }
  std::map<std::size_t, std::vector<double>> grad;
  for (auto l : m.free_rows) grad[l].assign(nv, 0.0);
  for (const auto& c : m.cells) {
    auto it = grad.find(c.l);
    if (it == grad.end()) continue;
    for (auto v : m.candidates[c.l]) it->second[v] -= c.k_given_l * std::log2(q[c.k][v]);
  }
  double gap = 0.0;
  for (auto& [l, g] : grad) {
    double lowest = std::numeric_limits<double>::infinity();
    double current = 0.0;
    for (auto v : m.candidates[l]) {
      g[v] = m.p_l[l] * (g[v] + std::log2(a[l][v]));
      lowest = std::min(lowest, g[v]);
      current += g[v] * a[l][v];
    }
    gap += lowest - current;
  }
  return oracle_objective(problem, m, a) + gap;
}

void all_compositions(int total, std::size_t parts, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= total; ++i) {
    cur.push_back(i);
    all_compositions(total - i, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

OracleBracket graph_entropy_oracle(const EntropyProblem& problem, const Rational& grid_step,
                                   const OracleLimits& limits) {
  if (problem.vertex_count() > limits.max_vertices || problem.family.size() > limits.max_family) {
    throw GuardExceeded("oracle size guard exceeded (" + std::to_string(problem.vertex_count()) +
                        " vertices, " + std::to_string(problem.family.size()) + " sets)");
  }
  const Marginals m(problem);
  const int divisions = grid_divisions(grid_step);
  std::vector<std::vector<std::vector<int>>> row_grid;
  double points = 1.0;
  for (auto l : m.free_rows) {
    std::vector<int> cur;
    row_grid.emplace_back();
    all_compositions(divisions, m.candidates[l].size(), cur, row_grid.back());
    points *= static_cast<double>(row_grid.back().size());
  }
  if (points > static_cast<double>(limits.max_points)) {
    throw GuardExceeded("oracle grid has " + std::to_string(points) + " points");
  }

  OracleBracket bracket;
  bracket.upper = std::numeric_limits<double>::infinity();
  Matrix a = fixed_start(problem, m);
  std::vector<std::size_t> idx(m.free_rows.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < m.free_rows.size(); ++i) {
      const auto l = m.free_rows[i];
      const auto& cand = m.candidates[l];
      std::fill(a[l].begin(), a[l].end(), 0.0);
      for (std::size_t j = 0; j < cand.size(); ++j) {
        a[l][cand[j]] = row_grid[i][idx[i]][j] / static_cast<double>(divisions);
      }
    }
    const double value = oracle_objective(problem, m, a);
    ++bracket.points;
    if (value < bracket.upper) {
      bracket.upper = value;
      bracket.argmin = a;
    }
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == row_grid[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  bracket.upper = std::max(bracket.upper, 0.0);

  if (m.free_rows.empty()) {
    bracket.lower = bracket.upper;
    return bracket;
  }
  double lower = 0.0;
  for (double eps = 1e-1; eps >= 1e-12; eps /= 10.0) {
    Matrix x = bracket.argmin;
    for (auto l : m.free_rows) {
      const auto& cand = m.candidates[l];
      for (auto v : cand) {
        x[l][v] = (1.0 - eps) * x[l][v] + eps / static_cast<double>(cand.size());
      }
    }
    const double b = supporting_bound(problem, m, x);
    if (std::isfinite(b)) lower = std::max(lower, b);
  }
  bracket.lower = std::min(lower, bracket.upper);
  return bracket;
}

}  // namespace treecomp
