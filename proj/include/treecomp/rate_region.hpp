#ifndef TREECOMP_RATE_REGION_HPP_
#define TREECOMP_RATE_REGION_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treecomp/char_graph.hpp"
#include "treecomp/errors.hpp"
#include "treecomp/graph_entropy.hpp"
#include "treecomp/source_model.hpp"

namespace treecomp {

enum class Provenance {
  kCutSet,              // conditional graph entropy across each valid cut
  kMarkovRegion,        // per-node bounds, tight under the Markov property
  kIndependentSources,  // partition entropies for independent sources
  kInnerBound,          // evaluation of a given message family
};

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct CutBound {
  NodeSet cut;
  NodeSet boundary;
  double bits = 0.0;
};

struct RateReport {
  Provenance provenance = Provenance::kCutSet;
  std::map<NodeId, double> node_bounds;
  std::vector<CutBound> cut_bounds;
};

struct RegionSettings {
  SolverSettings solver;
  GraphLimits limits;
};

// Refusal of the Markov-region formula, carrying the violating node.
class MarkovRefusal : public InputError {
 public:
  explicit MarkovRefusal(MarkovWitness witness);
  const MarkovWitness& witness() const { return witness_; }

 private:
  MarkovWitness witness_;
};

// H(G_{X_S | X_S^c}) on the source joint.
double cut_graph_entropy(const Instance& instance, const NodeSet& members,
                         const RegionSettings& settings = {});

// Sum of boundary rates >= H(G_{X_S | X_S^c}) for every valid cut S.
RateReport cutset_outer_bound(const Instance& instance, const RegionSettings& settings = {});

// R_u >= H(G_{X_Child(u) | X_Child(u)^c}). Throws MarkovRefusal.
RateReport markov_rate_region(const Instance& instance, const RegionSettings& settings = {});

// Partition of X_Child(u) into the maximal independent sets of its graph.
struct NodePartition {
  CharGraph graph;
  std::vector<VertexSet> blocks;  // positive-mass blocks only
  std::vector<Rational> masses;
};

struct IndependentRegion {
  RateReport report;
  std::map<NodeId, NodePartition> partitions;
};

// R_u >= H(W*_u). Throws InputError unless the sources are independent.
IndependentRegion independent_sources_region(const Instance& instance,
                                             const GraphLimits& limits = {});

}  // namespace treecomp

#endif  // TREECOMP_RATE_REGION_HPP_
