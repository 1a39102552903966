#ifndef TREECOMP_SOURCE_MODEL_HPP_
#define TREECOMP_SOURCE_MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treecomp/joint.hpp"
#include "treecomp/rational.hpp"
#include "treecomp/tree.hpp"

namespace treecomp {

// Per-node finite alphabets plus an exact joint pmf. Tuples are keyed by
// ascending node id.
class SourceModel {
 public:
  SourceModel(std::vector<NodeId> node_ids, std::vector<std::vector<std::string>> alphabets,
              Pmf pmf);

  const std::vector<NodeId>& node_ids() const { return node_ids_; }
  std::size_t index_of(NodeId u) const;
  const std::vector<std::string>& alphabet(NodeId u) const;
  int letter(NodeId u, const std::string& label) const;
  const Pmf& pmf() const { return pmf_; }
  Rational probability(const Tuple& x) const;

  // Exact marginal over `nodes` (keyed in ascending id order), conditioned on
  // `given` when nonempty. Throws InputError on a zero-probability condition.
  Pmf marginal(const NodeSet& nodes, const std::map<NodeId, int>& given = {}) const;

  // Coordinates "X<id>" in ascending id order.
  Joint joint() const;

 private:
  std::vector<NodeId> node_ids_;
  std::vector<std::vector<std::string>> alphabets_;
  Pmf pmf_;
};

class FunctionTable {
 public:
  FunctionTable(std::vector<std::string> outputs, std::map<Tuple, int> table);

  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::map<Tuple, int>& table() const { return table_; }
  std::optional<int> value(const Tuple& x) const;
  // Throws InputError when undefined at x.
  int at(const Tuple& x) const;

 private:
  std::vector<std::string> outputs_;
  std::map<Tuple, int> table_;
};

struct Instance {
  // Cross-checks node sets and that f covers the support.
  Instance(RootedTree tree, SourceModel sources, FunctionTable function);

  RootedTree tree;
  SourceModel sources;
  FunctionTable function;
};

struct MarkovWitness {
  NodeId node;
  Tuple tuple;  // full source tuple
};

struct MarkovVerdict {
  bool holds = true;
  std::optional<MarkovWitness> witness;
};

// Exact check of p(x) = p(x_r) * prod_{u != r} p(x_u | x_out(u)). On failure
// locates a node whose removal leaves dependent groups given its letter.
MarkovVerdict markov_property_check(const RootedTree& tree, const SourceModel& model);

// The groups Child(u_i), u_i in In(u), and Child(u)^c independent given X_u.
std::optional<MarkovWitness> local_markov_violation(const RootedTree& tree,
                                                    const SourceModel& model, NodeId u);

// Exact product-of-marginals check.
bool sources_independent(const SourceModel& model);

std::string source_coord(NodeId u);
std::string message_coord(NodeId u);

}  // namespace treecomp

#endif  // TREECOMP_SOURCE_MODEL_HPP_
