#include "treecomp/tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "treecomp/errors.hpp"

namespace treecomp {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

std::string edge_text(const Edge& e) {
  return std::to_string(e.first) + "->" + std::to_string(e.second);
}

}  // namespace

std::string to_string(TreeViolationKind kind) {
  switch (kind) {
    case TreeViolationKind::kUnknownNode: return "unknown node";
    case TreeViolationKind::kDuplicateNode: return "duplicate node";
    case TreeViolationKind::kCycle: return "cycle";
    case TreeViolationKind::kRootHasOutEdge: return "root has outgoing edge";
    case TreeViolationKind::kMultipleOutEdges: return "multiple outgoing edges";
    case TreeViolationKind::kDisconnected: return "disconnected";
  }
  return "unknown";
}

std::optional<TreeViolation> validate_tree(const std::vector<NodeId>& nodes,
                                           const std::vector<Edge>& edges,
                                           NodeId root) {
  std::map<NodeId, std::size_t> index;
  for (NodeId u : nodes) {
    if (!index.emplace(u, index.size()).second) {
      return TreeViolation{TreeViolationKind::kDuplicateNode,
                           "node " + std::to_string(u) + " listed twice"};
    }
  }
  if (nodes.empty()) {
    return TreeViolation{TreeViolationKind::kUnknownNode, "tree has no nodes"};
  }
  if (!index.count(root)) {
    return TreeViolation{TreeViolationKind::kUnknownNode,
                         "root " + std::to_string(root) + " is not a node"};
  }
  for (const auto& e : edges) {
    if (!index.count(e.first) || !index.count(e.second)) {
      return TreeViolation{TreeViolationKind::kUnknownNode,
                           "edge " + edge_text(e) + " references an unknown node"};
    }
  }
  DisjointSets ds(nodes.size());
  for (const auto& e : edges) {
    if (e.first == e.second || !ds.unite(index[e.first], index[e.second])) {
      return TreeViolation{TreeViolationKind::kCycle, "edge " + edge_text(e) + " closes a cycle"};
    }
  }
  std::map<NodeId, int> out_degree;
  for (const auto& e : edges) {
    if (e.first == root) {
      return TreeViolation{TreeViolationKind::kRootHasOutEdge,
                           "root " + std::to_string(root) + " has outgoing edge " + edge_text(e)};
    }
    if (++out_degree[e.first] > 1) {
      return TreeViolation{TreeViolationKind::kMultipleOutEdges,
                           "node " + std::to_string(e.first) + " has more than one outgoing edge"};
    }
  }
  if (edges.size() + 1 != nodes.size()) {
    return TreeViolation{TreeViolationKind::kDisconnected,
                         "graph has " + std::to_string(nodes.size() - edges.size()) +
                             " connected components"};
  }
  return std::nullopt;
}

RootedTree::RootedTree(std::vector<NodeId> nodes, std::vector<Edge> edges, NodeId root)
    : root_(root) {
  if (auto violation = validate_tree(nodes, edges, root)) {
    throw InputError("invalid tree: " + to_string(violation->kind) + " (" +
                     violation->description + ")");
  }
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end());
  nodes_ = std::move(nodes);
  edges_ = std::move(edges);
  for (NodeId u : nodes_) in_[u];
  for (const auto& [u, v] : edges_) {
    out_[u] = v;
    in_[v].push_back(u);
  }
  for (auto& [u, ins] : in_) std::sort(ins.begin(), ins.end());

  std::function<const NodeSet&(NodeId)> collect = [&](NodeId u) -> const NodeSet& {
    auto it = child_.find(u);
    if (it != child_.end()) return it->second;
    NodeSet acc{u};
    for (NodeId v : in_[u]) acc = set_union(acc, collect(v));
    return child_.emplace(u, std::move(acc)).first->second;
  };
  for (NodeId u : nodes_) {
    collect(u);
    int d = 0;
    for (NodeId w = u; w != root_; w = out_.at(w)) ++d;
    depth_[u] = d;
  }
}

bool RootedTree::contains(NodeId u) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), u);
}

void RootedTree::require(NodeId u) const {
  if (!contains(u)) throw InputError("unknown node id " + std::to_string(u));
}

std::size_t RootedTree::index_of(NodeId u) const {
  require(u);
  return static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), u) -
                                  nodes_.begin());
}

const NodeSet& RootedTree::in(NodeId u) const {
  require(u);
  return in_.at(u);
}

std::optional<NodeId> RootedTree::out(NodeId u) const {
  require(u);
  auto it = out_.find(u);
  if (it == out_.end()) return std::nullopt;
  return it->second;
}

const NodeSet& RootedTree::child(NodeId u) const {
  require(u);
  return child_.at(u);
}

NodeSet RootedTree::strangers(NodeId u) const {
  require(u);
  NodeSet result;
  for (NodeId v : nodes_) {
    const auto& cu = child_.at(u);
    const auto& cv = child_.at(v);
    if (!std::binary_search(cu.begin(), cu.end(), v) &&
        !std::binary_search(cv.begin(), cv.end(), u)) {
      result.push_back(v);
    }
  }
  return result;
}

int RootedTree::depth(NodeId u) const {
  require(u);
  return depth_.at(u);
}

NodeRelations relations(const RootedTree& tree, NodeId u) {
  return NodeRelations{tree.in(u), tree.out(u), tree.child(u), tree.strangers(u)};
}

Ordering Ordering::from_sequence(const RootedTree& tree, std::vector<NodeId> sequence) {
  if (sequence.size() != tree.size()) {
    throw InputError("ordering lists " + std::to_string(sequence.size()) + " nodes, tree has " +
                     std::to_string(tree.size()));
  }
  Ordering ord;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (!tree.contains(sequence[i])) {
      throw InputError("ordering references unknown node " + std::to_string(sequence[i]));
    }
    if (!ord.rank_.emplace(sequence[i], static_cast<int>(i) + 1).second) {
      throw InputError("ordering lists node " + std::to_string(sequence[i]) + " twice");
    }
  }
  for (const auto& [u, v] : tree.edges()) {
    if (ord.rank_[u] >= ord.rank_[v]) {
      throw InputError("ordering places " + std::to_string(u) + " after its outgoing neighbour " +
                       std::to_string(v));
    }
  }
  ord.sequence_ = std::move(sequence);
  return ord;
}

Ordering Ordering::from_ranks(const RootedTree& tree, const std::vector<int>& ranks) {
  if (ranks.size() != tree.size()) throw InputError("rank vector has wrong length");
  std::vector<NodeId> sequence(tree.size(), 0);
  std::vector<bool> seen(tree.size(), false);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const int r = ranks[i];
    if (r < 1 || r > static_cast<int>(tree.size()) || seen[r - 1]) {
      throw InputError("rank vector is not a permutation");
    }
    seen[r - 1] = true;
    sequence[r - 1] = tree.nodes()[i];
  }
  return from_sequence(tree, std::move(sequence));
}

Ordering canonical_ordering(const RootedTree& tree) {
  std::vector<NodeId> seq = tree.nodes();
  std::stable_sort(seq.begin(), seq.end(), [&](NodeId a, NodeId b) {
    if (tree.depth(a) != tree.depth(b)) return tree.depth(a) > tree.depth(b);
    return a < b;
  });
  return Ordering::from_sequence(tree, std::move(seq));
}

OrderingSets ordering_sets(const RootedTree& tree, const Ordering& ord, NodeId u) {
  OrderingSets sets;
  const int ru = ord.rank(u);
  for (NodeId v : tree.nodes()) {
    if (ord.rank(v) < ru) sets.sub.push_back(v);
    if (ord.rank(v) > ru) sets.sup.push_back(v);
  }
  for (NodeId v : sets.sub) {
    const auto vo = tree.out(v);
    if (!vo) continue;
    if (*vo != u && !std::binary_search(sets.sub.begin(), sets.sub.end(), *vo)) {
      sets.roots.push_back(v);
    }
  }
  return sets;
}

std::vector<Ordering> enumerate_orderings(const RootedTree& tree, std::size_t limit) {
  std::vector<Ordering> result;
  const Ordering canonical = canonical_ordering(tree);
  result.push_back(canonical);
  if (limit == 1) return result;

  std::map<NodeId, std::size_t> pending;
  for (NodeId u : tree.nodes()) pending[u] = tree.in(u).size();
  std::vector<NodeId> seq;
  std::set<NodeId> placed;
  bool done = false;

  std::function<void()> extend = [&]() {
    if (done) return;
    if (seq.size() == tree.size()) {
      if (seq != canonical.sequence()) {
        result.push_back(Ordering::from_sequence(tree, seq));
        if (limit != 0 && result.size() >= limit) done = true;
      }
      return;
    }
    for (NodeId u : tree.nodes()) {
      if (placed.count(u) || pending[u] != 0) continue;
      placed.insert(u);
      seq.push_back(u);
      const auto o = tree.out(u);
      if (o) --pending[*o];
      extend();
      if (o) ++pending[*o];
      seq.pop_back();
      placed.erase(u);
      if (done) return;
    }
  };
  extend();
  return result;
}

bool is_valid_cut(const RootedTree& tree, const NodeSet& members) {
  if (members.empty() || members.size() >= tree.size()) return false;
  for (NodeId u : members) {
    if (!tree.contains(u)) return false;
    for (NodeId v : tree.in(u)) {
      if (!std::binary_search(members.begin(), members.end(), v)) return false;
    }
  }
  return true;
}

std::vector<Cut> enumerate_valid_cuts(const RootedTree& tree) {
  // Downward-closed sets, built in leaves-first order so every node is
  // decided after all of its incoming neighbours.
  const auto order = canonical_ordering(tree).sequence();
  std::vector<NodeSet> closed;
  std::set<NodeId> chosen;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (i == order.size()) {
      if (!chosen.empty() && chosen.size() < tree.size()) {
        closed.emplace_back(chosen.begin(), chosen.end());
      }
      return;
    }
    const NodeId u = order[i];
    visit(i + 1);
    const auto& ins = tree.in(u);
    if (std::all_of(ins.begin(), ins.end(), [&](NodeId v) { return chosen.count(v) > 0; })) {
      chosen.insert(u);
      visit(i + 1);
      chosen.erase(u);
    }
  };
  visit(0);
  std::sort(closed.begin(), closed.end(), [](const NodeSet& a, const NodeSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Cut> cuts;
  for (auto& members : closed) {
    Cut cut;
    for (NodeId v : members) {
      const auto o = tree.out(v);
      if (o && !std::binary_search(members.begin(), members.end(), *o)) cut.boundary.push_back(v);
    }
    cut.members = std::move(members);
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  NodeSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  NodeSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::string format_set(const NodeSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace treecomp
