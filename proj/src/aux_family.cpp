#include "treecomp/aux_family.hpp"

#include <algorithm>

#include "treecomp/errors.hpp"

namespace treecomp {

bool NodeMessages::deterministic() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& row) {
    return row.second.size() == 1 && row.second.front().second == 1;
  });
}

int NodeMessages::message_for(const Tuple& input) const {
  const auto it = rows.find(input);
  if (it == rows.end()) {
    throw InputError("node " + std::to_string(node) + " has no message for this input");
  }
  if (it->second.size() != 1) {
    throw InputError("node " + std::to_string(node) + " has a randomized row");
  }
  return it->second.front().first;
}

bool NodeMessages::contains(int message, const Tuple& input) const {
  if (message < 0 || static_cast<std::size_t>(message) >= messages.size()) return false;
  const auto& m = messages[static_cast<std::size_t>(message)];
  return std::binary_search(m.begin(), m.end(), input);
}

const NodeMessages& AuxFamily::at(NodeId u) const {
  const auto it = nodes.find(u);
  if (it == nodes.end()) throw InputError("family has no messages for node " + std::to_string(u));
  return it->second;
}

bool AuxFamily::deterministic() const {
  return std::all_of(nodes.begin(), nodes.end(),
                     [](const auto& kv) { return kv.second.deterministic(); });
}

namespace {

CoordList coords_for(const Joint& joint, const NodeSet& ids, std::string (*name)(NodeId)) {
  CoordList out;
  for (auto v : ids) out.push_back(joint.index_of(name(v)));
  return out;
}

CoordList input_coords(const Joint& joint, NodeId u, const NodeSet& inputs) {
  return concat({joint.index_of(source_coord(u))}, coords_for(joint, inputs, message_coord));
}

std::vector<std::string> message_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return names;
}

Joint extend_with(const Joint& joint, const NodeMessages& nm) {
  const CoordList in = input_coords(joint, nm.node, nm.inputs);
  for (const auto& [input, row] : nm.rows) {
    for (const auto& [m, p] : row) {
      if (m < 0 || static_cast<std::size_t>(m) >= nm.messages.size()) {
        throw InputError("node " + std::to_string(nm.node) + " row uses unknown message " +
                         std::to_string(m));
      }
    }
  }
  return joint.extended({message_coord(nm.node), message_names(nm.messages.size())},
                        [&](const Tuple& t) -> const std::vector<std::pair<int, Rational>>& {
                          const auto it = nm.rows.find(project(t, in));
                          if (it == nm.rows.end()) {
                            throw InputError("node " + std::to_string(nm.node) +
                                             " has no message for a positive-probability input");
                          }
                          return it->second;
                        });
}

}  // namespace

Joint family_joint(const Instance& instance, const AuxFamily& family, std::size_t max_support) {
  const auto& tree = instance.tree;
  Joint joint = instance.sources.joint();
  for (auto u : tree.nodes()) {
    if (u != tree.root() && !family.nodes.count(u)) {
      throw InputError("family has no messages for node " + std::to_string(u));
    }
  }
  for (auto u : family.ordering) {
    if (u == tree.root()) continue;
    joint = extend_with(joint, family.at(u));
    if (joint.mass().size() > max_support) {
      throw GuardExceeded("joint support of sources and messages exceeds " +
                          std::to_string(max_support));
    }
  }
  return joint;
}

std::string message_label(const Instance& instance, const AuxFamily& family, NodeId u,
                          int message) {
  const auto& nm = family.at(u);
  const auto& alphabet = instance.sources.alphabet(u);
  std::string out = "{";
  bool first = true;
  for (const auto& member : nm.messages.at(static_cast<std::size_t>(message))) {
    out += first ? "" : ",";
    first = false;
    if (member.size() == 1) {
      out += alphabet[member[0]];
      continue;
    }
    out += "(" + alphabet[member[0]];
    for (std::size_t i = 1; i < member.size(); ++i) out += ",w" + std::to_string(member[i]);
    out += ")";
  }
  return out + "}";
}

CompositeSpec stage_spec(const RootedTree& tree, const Joint& joint, const Ordering& ord,
                         NodeId u) {
  const auto sets = ordering_sets(tree, ord, u);
  return {input_coords(joint, u, tree.in(u)),
          concat(coords_for(joint, sets.sup, source_coord),
                 coords_for(joint, sets.roots, message_coord))};
}

AuxFamily build_aux_family(const Instance& instance, const Ordering& ord,
                           const SolverSettings& settings, const GraphLimits& limits) {
  const auto& tree = instance.tree;
  const auto verdict = markov_property_check(tree, instance.sources);
  if (!verdict.holds) {
    throw InputError("sources violate the Markov property at node " +
                     std::to_string(verdict.witness->node));
  }
  AuxFamily family;
  family.ordering = ord.sequence();
  Joint joint = instance.sources.joint();
  for (auto u : ord.sequence()) {
    if (u == tree.root()) continue;
    const CompositeSpec spec = stage_spec(tree, joint, ord, u);
    CharGraph g = build_char_graph(joint, spec, instance.function, limits);
    const auto mis = maximal_independent_sets(g, limits);
    const std::size_t n = g.vertex_count();

    std::vector<std::size_t> block(n, mis.sets.size());
    const auto partition = check_partition(mis, g);
    if (partition.is_partition) {
      for (std::size_t s = 0; s < mis.sets.size(); ++s) {
        for (auto v : mis.sets[s]) {
          if (g.in_support(v)) block[v] = s;
        }
      }
    } else {
      const auto problem = make_entropy_problem(joint, spec, g, mis.sets);
      const auto solution = graph_entropy(problem, settings);
      if (!solution.deterministic) {
        const auto& w = *partition.overlap;
        throw CertificationFailure(
            "node " + std::to_string(u) + ": stage sets overlap at " + g.label(w.vertex) + " (" +
            format_vertex_set(g, w.first) + ", " + format_vertex_set(g, w.second) +
            ") and no deterministic assignment is optimal");
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (!g.in_support(v)) continue;
        const auto& row = solution.assignment[v];
        block[v] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
      }
    }

    NodeMessages nm;
    nm.node = u;
    nm.inputs = tree.in(u);
    std::vector<int> index(mis.sets.size(), -1);
    for (std::size_t s = 0; s < mis.sets.size(); ++s) {
      const bool used = std::any_of(mis.sets[s].begin(), mis.sets[s].end(),
                                    [&](std::size_t v) { return block[v] == s; });
      if (!used) continue;
      index[s] = static_cast<int>(nm.messages.size());
      std::vector<Tuple> members;
      for (auto v : mis.sets[s]) members.push_back(g.letter(v));
      std::sort(members.begin(), members.end());
      nm.messages.push_back(std::move(members));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (g.in_support(v)) nm.rows[g.letter(v)] = {{index[block[v]], Rational(1)}};
    }
    joint = extend_with(joint, nm);
    family.nodes.emplace(u, std::move(nm));
  }
  return family;
}

std::string to_string(AuxViolationKind kind) {
  switch (kind) {
    case AuxViolationKind::kShape: return "shape";
    case AuxViolationKind::kContainment: return "containment";
    case AuxViolationKind::kNotIndependent: return "not-independent";
    case AuxViolationKind::kNotDetermined: return "not-determined";
    case AuxViolationKind::kMarkovChain: return "markov-chain";
  }
  return "unknown";
}

AuxValidity check_aux_validity(const Instance& instance, const AuxFamily& family,
                               const Ordering& ord, const std::vector<Ordering>& others) {
  Joint joint;
  try {
    joint = family_joint(instance, family);
  } catch (const InputError& e) {
    return {{{AuxViolationKind::kShape, instance.tree.root(), std::nullopt, e.what()}}};
  }
  return check_aux_validity(instance, family, joint, ord, others);
}

AuxValidity check_aux_validity(const Instance& instance, const AuxFamily& family,
                               const Joint& joint, const Ordering& ord,
                               const std::vector<Ordering>& others) {
  const auto& tree = instance.tree;
  AuxValidity result;
  auto report = [&](AuxViolationKind kind, NodeId u, std::optional<std::size_t> o,
                    std::string detail) {
    result.violations.push_back({kind, u, o, std::move(detail)});
  };

  NodeSet senders;
  for (auto u : tree.nodes()) {
    if (u == tree.root()) continue;
    senders.push_back(u);
    if (!family.nodes.count(u) || !joint.find(message_coord(u))) {
      report(AuxViolationKind::kShape, u, std::nullopt, "no message coordinate");
    }
  }
  if (!result.ok()) return result;

  for (auto u : senders) {
    const auto& nm = family.at(u);
    if (nm.inputs != tree.in(u)) {
      report(AuxViolationKind::kShape, u, std::nullopt, "inputs differ from In(u)");
      continue;
    }
    const CoordList in = input_coords(joint, u, nm.inputs);
    const std::size_t w = joint.index_of(message_coord(u));
    for (const auto& [t, p] : joint.mass()) {
      if (!nm.contains(t[w], project(t, in))) {
        report(AuxViolationKind::kContainment, u, std::nullopt,
               "an input with positive probability lies outside message " +
                   joint.coords()[w].labels[t[w]]);
        break;
      }
    }
  }

  std::vector<Ordering> all{ord};
  all.insert(all.end(), others.begin(), others.end());
  for (std::size_t o = 0; o < all.size(); ++o) {
    for (auto u : senders) {
      const auto& nm = family.at(u);
      const CompositeSpec spec = stage_spec(tree, joint, all[o], u);
      try {
        const CharGraph g = build_char_graph(joint, spec, instance.function);
        for (std::size_t m = 0; m < nm.messages.size(); ++m) {
          VertexSet s;
          for (const auto& member : nm.messages[m]) s.push_back(g.vertex(member));
          std::sort(s.begin(), s.end());
          if (!is_independent(g, s)) {
            report(AuxViolationKind::kNotIndependent, u, o,
                   "message " + format_vertex_set(g, s) + " joins adjacent letters");
          }
        }
      } catch (const InputError& e) {
        report(AuxViolationKind::kNotDetermined, u, o, e.what());
      }

      const auto& child = tree.child(u);
      const NodeSet outside = set_difference(tree.nodes(), child);
      const CoordList message{joint.index_of(message_coord(u))};
      const CoordList in = input_coords(joint, u, nm.inputs);
      if (o == 0) {
        const CoordList rest = concat(coords_for(joint, outside, source_coord),
                                      coords_for(joint, tree.strangers(u), message_coord));
        if (joint.independence_given({message, rest}, in)) {
          report(AuxViolationKind::kMarkovChain, u, o,
                 "message depends on sources or messages beyond its inputs");
        }
      }
      const NodeSet earlier = set_difference(ordering_sets(tree, all[o], u).sub, child);
      const CoordList rest = concat(coords_for(joint, outside, source_coord),
                                    coords_for(joint, earlier, message_coord));
      if (joint.independence_given({message, rest}, in)) {
        report(AuxViolationKind::kMarkovChain, u, o,
               "message depends on earlier messages outside its subtree");
      }
    }
  }
  return result;
}

std::optional<IndependenceWitness> subtree_dependence(const RootedTree& tree, const Joint& joint,
                                                      const Ordering& ord, NodeId u) {
  std::vector<CoordList> groups;
  for (auto c : tree.in(u)) {
    const auto& sub = tree.child(c);
    groups.push_back(
        concat(coords_for(joint, sub, source_coord), coords_for(joint, sub, message_coord)));
  }
  const auto& child = tree.child(u);
  const NodeSet earlier = set_difference(ordering_sets(tree, ord, u).sub, child);
  groups.push_back(concat(coords_for(joint, set_difference(tree.nodes(), child), source_coord),
                          coords_for(joint, earlier, message_coord)));
  return joint.independence_given(groups, {joint.index_of(source_coord(u))});
}

InnerBound evaluate_inner_bound(const Instance& instance, const AuxFamily& family,
                                std::size_t max_support) {
  const auto& tree = instance.tree;
  const Joint joint = family_joint(instance, family, max_support);
  const Ordering ord = Ordering::from_sequence(tree, family.ordering);
  const auto validity = check_aux_validity(instance, family, joint, ord);
  if (!validity.ok()) {
    const auto& v = validity.violations.front();
    throw InputError("invalid family at node " + std::to_string(v.node) + " (" +
                     to_string(v.kind) + "): " + v.detail);
  }

  InnerBound bound;
  for (auto u : tree.nodes()) {
    const NodeSet& in = tree.in(u);
    if (in.empty()) continue;
    for (std::size_t mask = 1; mask < (std::size_t{1} << in.size()); ++mask) {
      NodeSet s, rest, feeders;
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (mask >> i & 1) {
          s.push_back(in[i]);
          feeders = set_union(feeders, tree.in(in[i]));
        } else {
          rest.push_back(in[i]);
        }
      }
      const CoordList a =
          concat(coords_for(joint, s, source_coord), coords_for(joint, feeders, message_coord));
      const CoordList b = coords_for(joint, s, message_coord);
      const CoordList c =
          concat({joint.index_of(source_coord(u))}, coords_for(joint, rest, message_coord));
      bound.general.push_back({u, s, joint.mutual_information(a, b, c)});
    }
  }

  if (markov_property_check(tree, instance.sources).holds) {
    std::map<NodeId, double> reduced;
    for (auto u : tree.nodes()) {
      if (u == tree.root()) continue;
      reduced[u] = joint.mutual_information(input_coords(joint, u, tree.in(u)),
                                            {joint.index_of(message_coord(u))},
                                            {joint.index_of(source_coord(*tree.out(u)))});
    }
    bound.reduced = std::move(reduced);
  }
  return bound;
}

}  // namespace treecomp
