#include "treecomp/rate_region.hpp"

#include <stdexcept>

namespace treecomp {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kCutSet: return "cut-set";
    case Provenance::kMarkovRegion: return "markov-region";
    case Provenance::kIndependentSources: return "independent-sources";
    case Provenance::kInnerBound: return "inner-bound";
  }
  return "unknown";
}

Provenance provenance_from_string(const std::string& s) {
  for (auto p : {Provenance::kCutSet, Provenance::kMarkovRegion, Provenance::kIndependentSources,
                 Provenance::kInnerBound}) {
    if (to_string(p) == s) return p;
  }
  throw InputError("unknown provenance '" + s + "'");
}

MarkovRefusal::MarkovRefusal(MarkovWitness witness)
    : InputError("sources violate the Markov property at node " + std::to_string(witness.node) +
                 "; the per-node region does not apply (cut-set and family bounds remain "
                 "available)"),
      witness_(std::move(witness)) {}

namespace {

std::vector<std::string> names(const NodeSet& ids) {
  std::vector<std::string> out;
  for (auto v : ids) out.push_back(source_coord(v));
  return out;
}

double clamp(double bits) { return bits < 0.0 ? 0.0 : bits; }

}  // namespace

double cut_graph_entropy(const Instance& instance, const NodeSet& members,
                         const RegionSettings& settings) {
  const Joint joint = instance.sources.joint();
  const auto spec = make_spec(joint, names(members),
                              names(set_difference(instance.tree.nodes(), members)));
  const auto problem = make_entropy_problem(joint, spec, instance.function, settings.limits);
  return clamp(graph_entropy(problem, settings.solver).value);
}

RateReport cutset_outer_bound(const Instance& instance, const RegionSettings& settings) {
  RateReport report;
  report.provenance = Provenance::kCutSet;
  for (const auto& cut : enumerate_valid_cuts(instance.tree)) {
    report.cut_bounds.push_back(
        {cut.members, cut.boundary, cut_graph_entropy(instance, cut.members, settings)});
  }
  return report;
}

RateReport markov_rate_region(const Instance& instance, const RegionSettings& settings) {
  const auto& tree = instance.tree;
  const auto verdict = markov_property_check(tree, instance.sources);
  if (!verdict.holds) throw MarkovRefusal(*verdict.witness);
  RateReport report;
  report.provenance = Provenance::kMarkovRegion;
  for (auto u : tree.nodes()) {
    if (u == tree.root()) continue;
    report.node_bounds[u] = cut_graph_entropy(instance, tree.child(u), settings);
  }
  return report;
}

IndependentRegion independent_sources_region(const Instance& instance, const GraphLimits& limits) {
  if (!sources_independent(instance.sources)) {
    throw InputError("sources are not independent");
  }
  const auto& tree = instance.tree;
  const Joint joint = instance.sources.joint();
  IndependentRegion region;
  region.report.provenance = Provenance::kIndependentSources;
  for (auto u : tree.nodes()) {
    if (u == tree.root()) continue;
    const auto& child = tree.child(u);
    const auto spec =
        make_spec(joint, names(child), names(set_difference(tree.nodes(), child)));
    NodePartition part{build_char_graph(joint, spec, instance.function, limits), {}, {}};
    const auto mis = maximal_independent_sets(part.graph, limits);
    if (!check_partition(mis, part.graph).is_partition) {
      throw std::logic_error("maximal independent sets of node " + std::to_string(u) +
                             " do not partition the support under independent sources");
    }
    const Pmf marginal = joint.marginal(spec.l_coords);
    std::vector<Rational> block_of(part.graph.vertex_count());
    for (const auto& [letter, p] : marginal) block_of[part.graph.vertex(letter)] = p;
    for (const auto& s : mis.sets) {
      Rational mass = 0;
      for (auto v : s) mass += block_of[v];
      if (sgn(mass) == 0) continue;
      part.blocks.push_back(s);
      part.masses.push_back(mass);
    }
    region.report.node_bounds[u] = entropy_bits(part.masses);
    region.partitions.emplace(u, std::move(part));
  }
  return region;
}

}  // namespace treecomp
