#ifndef TREECOMP_TREE_HPP_
#define TREECOMP_TREE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treecomp {

using NodeId = int;
using NodeSet = std::vector<NodeId>;  // always sorted ascending, no duplicates
using Edge = std::pair<NodeId, NodeId>;  // u -> v

enum class TreeViolationKind {
  kUnknownNode,
  kDuplicateNode,
  kCycle,
  kRootHasOutEdge,
  kMultipleOutEdges,
  kDisconnected,
};

struct TreeViolation {
  TreeViolationKind kind;
  std::string description;
};

std::string to_string(TreeViolationKind kind);

// Checks the rooted-tree invariants on raw input; nullopt means valid.
std::optional<TreeViolation> validate_tree(const std::vector<NodeId>& nodes,
                                           const std::vector<Edge>& edges,
                                           NodeId root);

// Directed tree with every edge oriented toward the root. Immutable.
class RootedTree {
 public:
  // Throws InputError carrying the first violated invariant.
  RootedTree(std::vector<NodeId> nodes, std::vector<Edge> edges, NodeId root);

  const NodeSet& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(NodeId u) const;
  // Position of u in the ascending node list.
  std::size_t index_of(NodeId u) const;

  const NodeSet& in(NodeId u) const;
  std::optional<NodeId> out(NodeId u) const;
  // All nodes with a directed path to u, u included.
  const NodeSet& child(NodeId u) const;
  NodeSet strangers(NodeId u) const;
  int depth(NodeId u) const;

 private:
  void require(NodeId u) const;

  NodeSet nodes_;
  std::vector<Edge> edges_;
  NodeId root_;
  std::map<NodeId, NodeId> out_;
  std::map<NodeId, NodeSet> in_;
  std::map<NodeId, NodeSet> child_;
  std::map<NodeId, int> depth_;
};

struct NodeRelations {
  NodeSet in;
  std::optional<NodeId> out;
  NodeSet child;
  NodeSet strangers;
};

NodeRelations relations(const RootedTree& tree, NodeId u);

// Transmission schedule: every edge goes from an earlier to a later node.
class Ordering {
 public:
  // `sequence` lists the nodes in transmission order.
  static Ordering from_sequence(const RootedTree& tree, std::vector<NodeId> sequence);
  // `ranks[i]` is the 1-based position of the i-th node (ascending ids).
  static Ordering from_ranks(const RootedTree& tree, const std::vector<int>& ranks);

  const std::vector<NodeId>& sequence() const { return sequence_; }
  // 1-based position.
  int rank(NodeId u) const { return rank_.at(u); }

  bool operator==(const Ordering& other) const { return sequence_ == other.sequence_; }

 private:
  Ordering() = default;
  std::vector<NodeId> sequence_;
  std::map<NodeId, int> rank_;
};

// Sort by distance to root (descending) then id (ascending).
Ordering canonical_ordering(const RootedTree& tree);

struct OrderingSets {
  NodeSet sub;
  NodeSet sup;
  NodeSet roots;
};

OrderingSets ordering_sets(const RootedTree& tree, const Ordering& ord, NodeId u);

// Canonical ordering first, then the remaining linear extensions in
// lexicographic order of their sequences. `limit` of 0 means no limit.
std::vector<Ordering> enumerate_orderings(const RootedTree& tree, std::size_t limit = 0);

struct Cut {
  NodeSet members;
  // Members whose outgoing neighbour lies outside the cut.
  NodeSet boundary;
};

// Every nonempty proper subset closed under Child, ordered by size then
// lexicographically.
std::vector<Cut> enumerate_valid_cuts(const RootedTree& tree);

bool is_valid_cut(const RootedTree& tree, const NodeSet& members);

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
std::string format_set(const NodeSet& s);

}  // namespace treecomp

#endif  // TREECOMP_TREE_HPP_
