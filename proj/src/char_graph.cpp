#include "treecomp/char_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "treecomp/errors.hpp"

namespace treecomp {

CompositeSpec make_spec(const Joint& joint, const std::vector<std::string>& l_names,
                        const std::vector<std::string>& k_names) {
  CompositeSpec spec;
  for (const auto& n : l_names) spec.l_coords.push_back(joint.index_of(n));
  for (const auto& n : k_names) spec.k_coords.push_back(joint.index_of(n));
  for (auto c : spec.l_coords) {
    if (std::count(spec.k_coords.begin(), spec.k_coords.end(), c)) {
      throw InputError("coordinate " + joint.coords()[c].name + " appears in both L and K");
    }
  }
  return spec;
}

CharGraph::CharGraph(std::vector<std::string> coord_names,
                     std::vector<std::vector<std::string>> labels)
    : coord_names_(std::move(coord_names)), labels_(std::move(labels)) {
  std::size_t n = 1;
  for (const auto& l : labels_) {
    radices_.push_back(l.size());
    n *= l.size();
  }
  adj_.assign(n, Bitset(n));
  support_.assign(n, true);
}

CharGraph CharGraph::plain(std::vector<std::string> labels) {
  return CharGraph({"V"}, {std::move(labels)});
}

Tuple CharGraph::letter(std::size_t v) const {
  Tuple t(radices_.size());
  for (std::size_t i = radices_.size(); i-- > 0;) {
    t[i] = static_cast<int>(v % radices_[i]);
    v /= radices_[i];
  }
  return t;
}

std::size_t CharGraph::vertex(const Tuple& letter) const {
  std::size_t v = 0;
  for (std::size_t i = 0; i < radices_.size(); ++i) v = v * radices_[i] + letter[i];
  return v;
}

std::string CharGraph::label(std::size_t v) const {
  const Tuple t = letter(v);
  if (t.size() == 1) return labels_[0][t[0]];
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + labels_[i][t[i]];
  return s + ")";
}

void CharGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) throw InputError("self-loops are not allowed");
  adj_[a].set(b);
  adj_[b].set(a);
}

void CharGraph::remove_edge(std::size_t a, std::size_t b) {
  adj_[a].reset(b);
  adj_[b].reset(a);
}

std::vector<std::pair<std::size_t, std::size_t>> CharGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t a = 0; a < adj_.size(); ++a) {
    for (auto b = adj_[a].find_next(a); b != Bitset::npos; b = adj_[a].find_next(b)) {
      e.emplace_back(a, b);
    }
  }
  return e;
}

std::size_t CharGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : adj_) n += row.count();
  return n / 2;
}

CharGraph build_char_graph(const Joint& joint, const CompositeSpec& spec, const FunctionTable& f,
                           const GraphLimits& limits) {
  std::size_t product = 1;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels;
  for (auto c : spec.l_coords) {
    product *= joint.radix(c);
    if (product > limits.max_vertices) {
      throw GuardExceeded("vertex alphabet exceeds cap of " +
                          std::to_string(limits.max_vertices));
    }
    names.push_back(joint.coords()[c].name);
    labels.push_back(joint.coords()[c].labels);
  }
  CharGraph g(std::move(names), std::move(labels));
  const std::size_t n = g.vertex_count();
  for (std::size_t v = 0; v < n; ++v) g.set_support(v, false);

  const std::size_t arity = f.table().empty() ? 0 : f.table().begin()->first.size();
  if (arity > joint.coord_count()) throw InputError("function arity exceeds joint coordinates");
  CoordList source_coords(arity);
  for (std::size_t i = 0; i < arity; ++i) source_coords[i] = i;

  std::map<Tuple, std::map<std::size_t, int>> by_k;
  for (const auto& [t, p] : joint.mass()) {
    const int value = f.at(project(t, source_coords));
    const std::size_t l = g.vertex(project(t, spec.l_coords));
    auto [it, fresh] = by_k[project(t, spec.k_coords)].emplace(l, value);
    if (!fresh && it->second != value) {
      throw InputError("function is not determined by (L, K): letter " + g.label(l) +
                       " with the same side information yields two values");
    }
    g.set_support(l, true);
  }

  for (const auto& [k, letters] : by_k) {
    std::map<int, Bitset> by_value;
    Bitset all(n);
    for (const auto& [l, value] : letters) {
      auto [it, fresh] = by_value.try_emplace(value, n);
      it->second.set(l);
      all.set(l);
    }
    if (by_value.size() < 2) continue;
    for (const auto& [l, value] : letters) {
      const Bitset differ = all - by_value.at(value);
      for (auto m = differ.find_first(); m != Bitset::npos; m = differ.find_next(m)) {
        g.add_edge(l, m);
      }
    }
  }
  return g;
}

bool is_independent(const CharGraph& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g.adjacent(s[i], s[j])) return false;
    }
  }
  return true;
}

namespace {

VertexSet to_set(const Bitset& b) {
  VertexSet s;
  for (auto v = b.find_first(); v != Bitset::npos; v = b.find_next(v)) s.push_back(v);
  return s;
}

}  // namespace

IndepSetFamily independent_sets(const CharGraph& g, const GraphLimits& limits) {
  const std::size_t n = g.vertex_count();
  if (n > limits.max_vertices) throw GuardExceeded("vertex count exceeds cap");
  IndepSetFamily fam{{}, SetKind::kIndependent};
  VertexSet current;
  std::function<void(const Bitset&)> extend = [&](const Bitset& candidates) {
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
      current.push_back(v);
      fam.sets.push_back(current);
      if (fam.sets.size() > limits.max_sets) {
        throw GuardExceeded("independent-set count exceeds cap of " +
                            std::to_string(limits.max_sets));
      }
      Bitset next = candidates - g.neighbours(v);
      for (auto w = next.find_first(); w != Bitset::npos && w <= v; w = next.find_next(w)) {
        next.reset(w);
      }
      extend(next);
      current.pop_back();
    }
  };
  Bitset all(n);
  all.set();
  extend(all);
  std::sort(fam.sets.begin(), fam.sets.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return fam;
}

IndepSetFamily maximal_independent_sets(const CharGraph& g, const GraphLimits& limits) {
  const std::size_t n = g.vertex_count();
  if (n > limits.max_vertices) throw GuardExceeded("vertex count exceeds cap");
  // Cliques of the complement are the independent sets of g.
  std::vector<Bitset> comp(n);
  for (std::size_t v = 0; v < n; ++v) {
    comp[v] = ~g.neighbours(v);
    comp[v].reset(v);
  }
  IndepSetFamily fam{{}, SetKind::kMaximalIndependent};
  Bitset r(n);
  std::function<void(Bitset, Bitset)> expand = [&](Bitset p, Bitset x) {
    if (p.none() && x.none()) {
      fam.sets.push_back(to_set(r));
      if (fam.sets.size() > limits.max_sets) {
        throw GuardExceeded("maximal independent set count exceeds cap of " +
                            std::to_string(limits.max_sets));
      }
      return;
    }
    // Tomita pivot: the vertex of P | X with most complement-neighbours in P.
    std::size_t pivot = Bitset::npos;
    std::size_t best = 0;
    const Bitset px = p | x;
    for (auto u = px.find_first(); u != Bitset::npos; u = px.find_next(u)) {
      const std::size_t c = (p & comp[u]).count();
      if (pivot == Bitset::npos || c > best) {
        pivot = u;
        best = c;
      }
    }
    const Bitset branch = p - comp[pivot];
    for (auto v = branch.find_first(); v != Bitset::npos; v = branch.find_next(v)) {
      r.set(v);
      expand(p & comp[v], x & comp[v]);
      r.reset(v);
      p.reset(v);
      x.set(v);
    }
  };
  Bitset p(n);
  p.set();
  expand(p, Bitset(n));
  std::sort(fam.sets.begin(), fam.sets.end());
  return fam;
}

PartitionCheck check_partition(const IndepSetFamily& fam, const CharGraph& g) {
  PartitionCheck result;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.in_support(v)) continue;
    const VertexSet* first = nullptr;
    for (const auto& s : fam.sets) {
      if (!std::binary_search(s.begin(), s.end(), v)) continue;
      if (!first) {
        first = &s;
      } else {
        result.is_partition = false;
        result.overlap = OverlapWitness{v, *first, s};
        return result;
      }
    }
    if (!first) {
      result.is_partition = false;
      result.uncovered = v;
      return result;
    }
  }
  return result;
}

GraphComparison compare_graphs(const CharGraph& a, const CharGraph& b) {
  if (a.coord_labels() != b.coord_labels()) return GraphComparison::kVertexMismatch;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    if (a.neighbours(v) != b.neighbours(v)) return GraphComparison::kEdgeMismatch;
  }
  return GraphComparison::kEqual;
}

bool graph_equal(const CharGraph& a, const CharGraph& b) {
  return compare_graphs(a, b) == GraphComparison::kEqual;
}

void write_edge_list(std::ostream& os, const CharGraph& g) {
  os << "# vertices " << g.vertex_count() << "\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << "v " << g.label(v) << (g.in_support(v) ? "" : " (zero-probability)") << "\n";
  }
  os << "# edges " << g.edge_count() << "\n";
  for (const auto& [a, b] : g.edges()) os << g.label(a) << " -- " << g.label(b) << "\n";
}

std::string format_vertex_set(const CharGraph& g, const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + g.label(s[i]);
  return out + "}";
}

}  // namespace treecomp
