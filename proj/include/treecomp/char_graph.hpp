#ifndef TREECOMP_CHAR_GRAPH_HPP_
#define TREECOMP_CHAR_GRAPH_HPP_

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "treecomp/joint.hpp"
#include "treecomp/source_model.hpp"

namespace treecomp {

using VertexSet = std::vector<std::size_t>;  // sorted vertex indices
using Bitset = boost::dynamic_bitset<>;

struct GraphLimits {
  std::size_t max_vertices = 4096;
  std::size_t max_sets = 1'000'000;
};

// Which joint coordinates form the vertex letters (L) and the side
// information (K). The function is read off the source coordinates.
struct CompositeSpec {
  CoordList l_coords;
  CoordList k_coords;
};

CompositeSpec make_spec(const Joint& joint, const std::vector<std::string>& l_names,
                        const std::vector<std::string>& k_names);

// Undirected graph on the full product alphabet of the L coordinates. Vertex
// indices follow lexicographic (mixed radix, first coordinate most
// significant) order.
class CharGraph {
 public:
  CharGraph() = default;
  CharGraph(std::vector<std::string> coord_names, std::vector<std::vector<std::string>> labels);
  // Plain graph with single-coordinate vertices named by `labels`.
  static CharGraph plain(std::vector<std::string> labels);

  std::size_t vertex_count() const { return support_.size(); }
  const std::vector<std::string>& coord_names() const { return coord_names_; }
  const std::vector<std::vector<std::string>>& coord_labels() const { return labels_; }

  Tuple letter(std::size_t v) const;
  std::size_t vertex(const Tuple& letter) const;
  std::string label(std::size_t v) const;

  void add_edge(std::size_t a, std::size_t b);
  void remove_edge(std::size_t a, std::size_t b);
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a][b]; }
  const Bitset& neighbours(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].count(); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const;

  // Vertices with positive marginal probability. Defaults to all.
  bool in_support(std::size_t v) const { return support_[v]; }
  void set_support(std::size_t v, bool s) { support_[v] = s; }

 private:
  std::vector<std::string> coord_names_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::size_t> radices_;
  std::vector<Bitset> adj_;
  std::vector<bool> support_;
};

// l1 ~ l2 iff some k and positive-probability contexts give different f
// values. Throws InputError when f is not determined by (L, K) and
// GuardExceeded when the product alphabet of L exceeds the vertex cap.
CharGraph build_char_graph(const Joint& joint, const CompositeSpec& spec, const FunctionTable& f,
                           const GraphLimits& limits = {});

enum class SetKind { kIndependent, kMaximalIndependent };

struct IndepSetFamily {
  std::vector<VertexSet> sets;
  SetKind kind = SetKind::kIndependent;
};

// All nonempty independent sets, ordered by size then lexicographically.
IndepSetFamily independent_sets(const CharGraph& g, const GraphLimits& limits = {});

// Maximal independent sets via pivoted clique enumeration on the complement,
// in lexicographic order.
IndepSetFamily maximal_independent_sets(const CharGraph& g, const GraphLimits& limits = {});

bool is_independent(const CharGraph& g, const VertexSet& s);

struct OverlapWitness {
  std::size_t vertex;
  VertexSet first;
  VertexSet second;
};

struct PartitionCheck {
  bool is_partition = true;
  std::optional<OverlapWitness> overlap;
  // Support vertex not covered by any set (cannot happen for maximal families).
  std::optional<std::size_t> uncovered;
};

// Whether the family partitions the support vertices. Zero-probability
// vertices are isolated and belong to every maximal set, so they are ignored.
PartitionCheck check_partition(const IndepSetFamily& fam, const CharGraph& g);

enum class GraphComparison { kEqual, kVertexMismatch, kEdgeMismatch };

GraphComparison compare_graphs(const CharGraph& a, const CharGraph& b);
bool graph_equal(const CharGraph& a, const CharGraph& b);

// "u -- v" lines after a vertex manifest.
void write_edge_list(std::ostream& os, const CharGraph& g);

std::string format_vertex_set(const CharGraph& g, const VertexSet& s);

}  // namespace treecomp

#endif  // TREECOMP_CHAR_GRAPH_HPP_
