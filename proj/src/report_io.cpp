#include "treecomp/report_io.hpp"

#include <algorithm>

#include "treecomp/errors.hpp"

namespace treecomp {

using nlohmann::json;

json to_json(const RateReport& report) {
  json j;
  j["provenance"] = to_string(report.provenance);
  j["node_bounds"] = json::object();
  for (const auto& [u, bits] : report.node_bounds) j["node_bounds"][std::to_string(u)] = bits;
  j["cut_bounds"] = json::array();
  for (const auto& c : report.cut_bounds) {
    j["cut_bounds"].push_back({{"cut", c.cut}, {"boundary", c.boundary}, {"bits", c.bits}});
  }
  return j;
}

RateReport rate_report_from_json(const json& j) {
  try {
    RateReport report;
    report.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    for (const auto& [key, bits] : j.at("node_bounds").items()) {
      report.node_bounds[std::stoi(key)] = bits.get<double>();
    }
    for (const auto& c : j.at("cut_bounds")) {
      report.cut_bounds.push_back({c.at("cut").get<NodeSet>(), c.at("boundary").get<NodeSet>(),
                                   c.at("bits").get<double>()});
    }
    return report;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed rate report: ") + e.what());
  }
}

json to_json(const CharGraph& g) {
  json j;
  j["coords"] = json::array();
  for (std::size_t c = 0; c < g.coord_names().size(); ++c) {
    j["coords"].push_back({{"name", g.coord_names()[c]}, {"labels", g.coord_labels()[c]}});
  }
  j["vertices"] = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    j["vertices"].push_back({{"label", g.label(v)}, {"support", g.in_support(v)}});
  }
  j["edges"] = json::array();
  for (const auto& [a, b] : g.edges()) j["edges"].push_back({a, b});
  return j;
}

CharGraph char_graph_from_json(const json& j) {
  try {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> labels;
    for (const auto& c : j.at("coords")) {
      names.push_back(c.at("name").get<std::string>());
      labels.push_back(c.at("labels").get<std::vector<std::string>>());
    }
    CharGraph g(std::move(names), std::move(labels));
    const auto& vertices = j.at("vertices");
    if (vertices.size() != g.vertex_count()) throw InputError("vertex count mismatch");
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      g.set_support(v, vertices[v].at("support").get<bool>());
    }
    for (const auto& e : j.at("edges")) {
      const auto a = e.at(0).get<std::size_t>();
      const auto b = e.at(1).get<std::size_t>();
      if (a >= g.vertex_count() || b >= g.vertex_count()) throw InputError("edge out of range");
      g.add_edge(a, b);
    }
    return g;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed graph: ") + e.what());
  }
}

json to_json(const EntropyProblem& problem, const EntropySolution& solution) {
  const auto& g = problem.graph;
  json j;
  j["value"] = solution.value;
  j["conditional_entropy"] = conditional_entropy(problem);
  j["deterministic"] = solution.deterministic;
  j["iterations"] = solution.iterations;
  j["family"] = json::array();
  for (const auto& s : problem.family) j["family"].push_back(format_vertex_set(g, s));
  std::vector<bool> used(problem.family.size(), false);
  json rows = json::object();
  for (std::size_t l = 0; l < solution.assignment.size(); ++l) {
    if (!g.in_support(l)) continue;
    json row = json::object();
    for (std::size_t v = 0; v < solution.assignment[l].size(); ++v) {
      if (solution.assignment[l][v] <= 0.0) continue;
      row[format_vertex_set(g, problem.family[v])] = solution.assignment[l][v];
      used[v] = true;
    }
    rows[g.label(l)] = row;
  }
  j["assignment"] = rows;
  j["support"] = json::array();
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (used[v]) j["support"].push_back(format_vertex_set(g, problem.family[v]));
  }
  if (solution.certificate) j["certificate"] = *solution.certificate;
  if (solution.oracle) {
    j["oracle"] = {{"lower", solution.oracle->lower},
                   {"upper", solution.oracle->upper},
                   {"points", solution.oracle->points}};
  }
  return j;
}

json to_json(const SimulationSummary& summary) {
  json j;
  j["total_support_size"] = summary.total_support_size;
  j["error_count"] = summary.error_count;
  j["message_entropy"] = json::object();
  for (const auto& [u, h] : summary.message_entropy) j["message_entropy"][std::to_string(u)] = h;
  j["alphabet_size"] = json::object();
  for (const auto& [u, n] : summary.alphabet_size) j["alphabet_size"][std::to_string(u)] = n;
  return j;
}

namespace {

json tuple_json(const Instance& instance, const Tuple& x) {
  const auto& ids = instance.sources.node_ids();
  json t = json::object();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    t[std::to_string(ids[i])] = instance.sources.alphabet(ids[i])[static_cast<std::size_t>(x[i])];
  }
  return t;
}

json input_json(const Instance& instance, const NodeMessages& nm, const Tuple& input) {
  json w = json::object();
  for (std::size_t i = 0; i < nm.inputs.size(); ++i) {
    w[std::to_string(nm.inputs[i])] = input[i + 1];
  }
  return {{"x", instance.sources.alphabet(nm.node)[static_cast<std::size_t>(input[0])]},
          {"w", w}};
}

Tuple input_from_json(const Instance& instance, const NodeMessages& nm, const json& j) {
  Tuple input{instance.sources.letter(nm.node, j.at("x").get<std::string>())};
  const auto& w = j.at("w");
  if (w.size() != nm.inputs.size()) {
    throw InputError("node " + std::to_string(nm.node) + ": input must name every incoming message");
  }
  for (auto c : nm.inputs) input.push_back(w.at(std::to_string(c)).get<int>());
  return input;
}

}  // namespace

json trace_record(const Instance& instance, const ProtocolTrace& trace) {
  json j;
  j["realization"] = tuple_json(instance, trace.realization);
  j["messages"] = json::object();
  for (const auto& [u, m] : trace.messages) j["messages"][std::to_string(u)] = m;
  j["root_output"] = trace.root_output
                         ? json(instance.function.outputs()[static_cast<std::size_t>(*trace.root_output)])
                         : json(nullptr);
  j["correct"] = trace.correct;
  if (trace.conflict) j["conflict"] = tuple_json(instance, *trace.conflict);
  return j;
}

json to_json(const InnerBound& bound) {
  json j;
  j["general"] = json::array();
  for (const auto& c : bound.general) {
    j["general"].push_back({{"receiver", c.receiver}, {"senders", c.senders}, {"bits", c.bits}});
  }
  if (bound.reduced) {
    j["reduced"] = json::object();
    for (const auto& [u, bits] : *bound.reduced) j["reduced"][std::to_string(u)] = bits;
  }
  return j;
}

json to_json(const AuxValidity& validity) {
  json j;
  j["ok"] = validity.ok();
  j["violations"] = json::array();
  for (const auto& v : validity.violations) {
    json item{{"kind", to_string(v.kind)}, {"node", v.node}, {"detail", v.detail}};
    if (v.ordering) item["ordering"] = *v.ordering;
    j["violations"].push_back(item);
  }
  return j;
}

json family_to_json(const Instance& instance, const AuxFamily& family) {
  json j;
  j["ordering"] = family.ordering;
  j["nodes"] = json::array();
  for (const auto& [u, nm] : family.nodes) {
    json node;
    node["node"] = u;
    node["inputs"] = nm.inputs;
    node["messages"] = json::array();
    for (const auto& m : nm.messages) {
      json members = json::array();
      for (const auto& member : m) members.push_back(input_json(instance, nm, member));
      node["messages"].push_back(members);
    }
    node["rows"] = json::array();
    for (const auto& [input, row] : nm.rows) {
      json p = json::object();
      for (const auto& [m, q] : row) p[std::to_string(m)] = to_string(q);
      node["rows"].push_back({{"input", input_json(instance, nm, input)}, {"p", p}});
    }
    j["nodes"].push_back(node);
  }
  return j;
}

AuxFamily family_from_json(const Instance& instance, const json& j) {
  try {
    AuxFamily family;
    family.ordering = j.at("ordering").get<std::vector<NodeId>>();
    for (const auto& node : j.at("nodes")) {
      NodeMessages nm;
      nm.node = node.at("node").get<NodeId>();
      nm.inputs = node.at("inputs").get<NodeSet>();
      for (const auto& m : node.at("messages")) {
        std::vector<Tuple> members;
        for (const auto& member : m) members.push_back(input_from_json(instance, nm, member));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        nm.messages.push_back(std::move(members));
      }
      for (const auto& row : node.at("rows")) {
        std::vector<std::pair<int, Rational>> dist;
        for (const auto& [m, p] : row.at("p").items()) {
          dist.emplace_back(std::stoi(m), parse_probability(p.get<std::string>()));
        }
        std::sort(dist.begin(), dist.end());
        Rational total = 0;
        for (const auto& [m, p] : dist) total += p;
        if (total != 1) {
          throw InputError("node " + std::to_string(nm.node) + ": a row does not sum to 1");
        }
        nm.rows[input_from_json(instance, nm, row.at("input"))] = std::move(dist);
      }
      const NodeId id = nm.node;
      if (!family.nodes.emplace(id, std::move(nm)).second) {
        throw InputError("node " + std::to_string(id) + " listed twice in the family");
      }
    }
    return family;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed family: ") + e.what());
  }
}

}  // namespace treecomp
