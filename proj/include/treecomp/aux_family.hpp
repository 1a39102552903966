#ifndef TREECOMP_AUX_FAMILY_HPP_
#define TREECOMP_AUX_FAMILY_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treecomp/char_graph.hpp"
#include "treecomp/graph_entropy.hpp"
#include "treecomp/joint.hpp"
#include "treecomp/source_model.hpp"
#include "treecomp/tree.hpp"

namespace treecomp {

// Messages of one node. A message is a set of input letters, an input letter
// being (x_u, w_c1, ..., w_cn) over the node's own source and the messages of
// its incoming neighbours in ascending id order.
struct NodeMessages {
  NodeId node = 0;
  NodeSet inputs;
  std::vector<std::vector<Tuple>> messages;  // each sorted, no duplicates
  // p(w | input) for every positive-probability input.
  std::map<Tuple, std::vector<std::pair<int, Rational>>> rows;

  bool deterministic() const;
  // The message chosen for `input` by a deterministic row.
  int message_for(const Tuple& input) const;
  bool contains(int message, const Tuple& input) const;
};

struct AuxFamily {
  std::vector<NodeId> ordering;  // construction schedule
  std::map<NodeId, NodeMessages> nodes;  // every non-root node

  const NodeMessages& at(NodeId u) const;
  bool deterministic() const;
};

// Source coordinates "X<id>" followed by "W<u>" in schedule order. Throws
// GuardExceeded past `max_support` entries and InputError on a missing row.
Joint family_joint(const Instance& instance, const AuxFamily& family,
                   std::size_t max_support = 1'000'000);

// "{a,b}" or "{(a,w0),(b,w1)}" naming a message by its members.
std::string message_label(const Instance& instance, const AuxFamily& family, NodeId u,
                          int message);

// Coordinates of the stage graph G_{X_u,W_In(u) | X_Sup(u),W_Roots(u)}.
CompositeSpec stage_spec(const RootedTree& tree, const Joint& joint, const Ordering& ord,
                         NodeId u);

// One message per block of the stage graph's maximal independent sets, each
// positive-probability input sent deterministically to its block. When the
// sets overlap the stage graph entropy problem is solved and a deterministic
// optimum is used; a randomized optimum aborts with CertificationFailure.
// Throws InputError when the Markov property fails.
AuxFamily build_aux_family(const Instance& instance, const Ordering& ord,
                           const SolverSettings& settings = {}, const GraphLimits& limits = {});

enum class AuxViolationKind {
  kShape,           // missing node, unknown message, or bad row
  kContainment,     // a positive-probability input outside its message
  kNotIndependent,  // a message that is not independent in the stage graph
  kNotDetermined,   // f not computable from the stage information
  kMarkovChain,     // message depends on more than (X_u, W_In(u))
};

struct AuxViolation {
  AuxViolationKind kind;
  NodeId node;
  // Position in the ordering list, for stage-dependent checks.
  std::optional<std::size_t> ordering;
  std::string detail;
};

struct AuxValidity {
  std::vector<AuxViolation> violations;
  bool ok() const { return violations.empty(); }
};

std::string to_string(AuxViolationKind kind);

// Containment, the stage independent-set condition and both Markov chain
// forms under `ord` and then under every ordering in `others`.
AuxValidity check_aux_validity(const Instance& instance, const AuxFamily& family,
                               const Ordering& ord, const std::vector<Ordering>& others = {});

// Same checks against an explicit joint of sources and messages.
AuxValidity check_aux_validity(const Instance& instance, const AuxFamily& family,
                               const Joint& joint, const Ordering& ord,
                               const std::vector<Ordering>& others = {});

// Subtrees (X_Child(c), W_Child(c)) for c in In(u) and the rest
// (X_Child(u)^c, W_Sub(u)\Child(u)) independent given X_u.
std::optional<IndependenceWitness> subtree_dependence(const RootedTree& tree, const Joint& joint,
                                                      const Ordering& ord, NodeId u);

struct InnerConstraint {
  NodeId receiver = 0;
  NodeSet senders;  // sum of their rates is bounded below
  double bits = 0.0;
};

struct InnerBound {
  std::vector<InnerConstraint> general;
  // R_u >= I(X_u, W_In(u); W_u | X_out(u)), present when the Markov
  // property holds.
  std::optional<std::map<NodeId, double>> reduced;
};

// Throws InputError when the family is invalid under its own schedule.
InnerBound evaluate_inner_bound(const Instance& instance, const AuxFamily& family,
                                std::size_t max_support = 1'000'000);

}  // namespace treecomp

#endif  // TREECOMP_AUX_FAMILY_HPP_
