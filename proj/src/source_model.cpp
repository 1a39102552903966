#include "treecomp/source_model.hpp"

#include <algorithm>

#include "treecomp/errors.hpp"

namespace treecomp {

std::string source_coord(NodeId u) { return "X" + std::to_string(u); }
std::string message_coord(NodeId u) { return "W" + std::to_string(u); }

SourceModel::SourceModel(std::vector<NodeId> node_ids,
                         std::vector<std::vector<std::string>> alphabets, Pmf pmf)
    : node_ids_(std::move(node_ids)), alphabets_(std::move(alphabets)) {
  if (node_ids_.size() != alphabets_.size()) {
    throw InputError("alphabet count does not match node count");
  }
  if (!std::is_sorted(node_ids_.begin(), node_ids_.end()) ||
      std::adjacent_find(node_ids_.begin(), node_ids_.end()) != node_ids_.end()) {
    throw InputError("source node ids must be strictly ascending");
  }
  for (std::size_t i = 0; i < alphabets_.size(); ++i) {
    if (alphabets_[i].empty()) {
      throw InputError("node " + std::to_string(node_ids_[i]) + " has an empty alphabet");
    }
    auto sorted = alphabets_[i];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("node " + std::to_string(node_ids_[i]) + " repeats a letter");
    }
  }
  Rational total = 0;
  for (auto& [x, p] : pmf) {
    if (x.size() != node_ids_.size()) throw InputError("pmf tuple has wrong arity");
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < 0 || static_cast<std::size_t>(x[i]) >= alphabets_[i].size()) {
        throw InputError("pmf tuple letter out of range at node " + std::to_string(node_ids_[i]));
      }
    }
    if (sgn(p) < 0) throw InputError("negative probability in pmf");
    if (sgn(p) == 0) continue;
    total += p;
    pmf_.emplace(x, p);
  }
  if (total != 1) throw InputError("pmf sums to " + to_string(total) + ", not 1");
}

std::size_t SourceModel::index_of(NodeId u) const {
  auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), u);
  if (it == node_ids_.end() || *it != u) throw InputError("unknown node id " + std::to_string(u));
  return static_cast<std::size_t>(it - node_ids_.begin());
}

const std::vector<std::string>& SourceModel::alphabet(NodeId u) const {
  return alphabets_[index_of(u)];
}

int SourceModel::letter(NodeId u, const std::string& label) const {
  const auto& a = alphabet(u);
  auto it = std::find(a.begin(), a.end(), label);
  if (it == a.end()) {
    throw InputError("letter '" + label + "' not in alphabet of node " + std::to_string(u));
  }
  return static_cast<int>(it - a.begin());
}

Rational SourceModel::probability(const Tuple& x) const {
  auto it = pmf_.find(x);
  return it == pmf_.end() ? Rational(0) : it->second;
}

Pmf SourceModel::marginal(const NodeSet& nodes, const std::map<NodeId, int>& given) const {
  CoordList coords;
  for (NodeId u : nodes) coords.push_back(index_of(u));
  std::vector<std::pair<std::size_t, int>> cond;
  for (const auto& [u, letter] : given) cond.emplace_back(index_of(u), letter);
  Pmf m;
  Rational norm = 0;
  for (const auto& [x, p] : pmf_) {
    bool match = true;
    for (const auto& [c, letter] : cond) match = match && x[c] == letter;
    if (!match) continue;
    m[project(x, coords)] += p;
    norm += p;
  }
  if (sgn(norm) == 0) throw InputError("conditioning event has probability zero");
  if (norm != 1) {
    for (auto& [k, p] : m) p /= norm;
  }
  return m;
}

Joint SourceModel::joint() const {
  std::vector<Coordinate> coords;
  for (std::size_t i = 0; i < node_ids_.size(); ++i) {
    coords.push_back(Coordinate{source_coord(node_ids_[i]), alphabets_[i]});
  }
  return Joint(std::move(coords), pmf_);
}

FunctionTable::FunctionTable(std::vector<std::string> outputs, std::map<Tuple, int> table)
    : outputs_(std::move(outputs)), table_(std::move(table)) {
  for (const auto& [x, v] : table_) {
    if (v < 0 || static_cast<std::size_t>(v) >= outputs_.size()) {
      throw InputError("function value index out of range");
    }
  }
}

std::optional<int> FunctionTable::value(const Tuple& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

int FunctionTable::at(const Tuple& x) const {
  auto v = value(x);
  if (!v) throw InputError("function undefined on a tuple");
  return *v;
}

Instance::Instance(RootedTree t, SourceModel s, FunctionTable f)
    : tree(std::move(t)), sources(std::move(s)), function(std::move(f)) {
  if (tree.nodes() != sources.node_ids()) {
    throw InputError("tree nodes and source nodes differ");
  }
  for (const auto& [x, p] : sources.pmf()) {
    if (!function.value(x)) {
      std::string desc;
      for (std::size_t i = 0; i < x.size(); ++i) {
        desc += (i ? "," : "") + std::to_string(tree.nodes()[i]) + "=" +
                sources.alphabet(tree.nodes()[i])[x[i]];
      }
      throw InputError("function undefined on support tuple (" + desc + ")");
    }
  }
}

std::optional<MarkovWitness> local_markov_violation(const RootedTree& tree,
                                                    const SourceModel& model, NodeId u) {
  const Joint joint = model.joint();
  std::vector<CoordList> groups;
  for (NodeId v : tree.in(u)) {
    CoordList g;
    for (NodeId w : tree.child(v)) g.push_back(model.index_of(w));
    groups.push_back(g);
  }
  CoordList rest;
  for (NodeId w : set_difference(tree.nodes(), tree.child(u))) rest.push_back(model.index_of(w));
  groups.push_back(rest);
  const auto w = joint.independence_given(groups, {model.index_of(u)});
  if (!w) return std::nullopt;
  Tuple x(model.node_ids().size(), 0);
  for (const auto& [c, letter] : w->point) x[c] = letter;
  return MarkovWitness{u, x};
}

MarkovVerdict markov_property_check(const RootedTree& tree, const SourceModel& model) {
  const NodeId r = tree.root();
  const std::size_t ri = model.index_of(r);
  const Pmf p_root = model.marginal({r});
  std::map<NodeId, Pmf> pair;  // keyed (x_u, x_out)
  std::map<NodeId, Pmf> parent;
  for (NodeId u : tree.nodes()) {
    if (u == r) continue;
    const NodeId o = *tree.out(u);
    pair[u] = model.joint().marginal({model.index_of(u), model.index_of(o)});
    parent[u] = model.marginal({o});
  }

  bool factorizes = true;
  Rational covered = 0;
  for (const auto& [x, p] : model.pmf()) {
    Rational q = p_root.at({x[ri]});
    for (NodeId u : tree.nodes()) {
      if (u == r) continue;
      const NodeId o = *tree.out(u);
      const int xu = x[model.index_of(u)];
      const int xo = x[model.index_of(o)];
      q *= pair[u].at({xu, xo}) / parent[u].at({xo});
    }
    if (q != p) {
      factorizes = false;
      break;
    }
    covered += q;
  }
  if (factorizes && covered == 1) return MarkovVerdict{true, std::nullopt};

  const Ordering order = canonical_ordering(tree);
  for (NodeId u : order.sequence()) {
    if (auto w = local_markov_violation(tree, model, u)) return MarkovVerdict{false, w};
  }
  throw std::logic_error("product form fails but every local check passes");
}

bool sources_independent(const SourceModel& model) {
  std::vector<CoordList> groups;
  for (std::size_t i = 0; i < model.node_ids().size(); ++i) groups.push_back({i});
  return !model.joint().independence_given(groups, {}).has_value();
}

}  // namespace treecomp
