#include "treecomp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "treecomp/aux_family.hpp"
#include "treecomp/errors.hpp"
#include "treecomp/instance_io.hpp"
#include "treecomp/protocol.hpp"
#include "treecomp/rate_region.hpp"
#include "treecomp/report_io.hpp"

namespace treecomp {

namespace {

using nlohmann::json;

struct Options {
  std::string verb;
  std::string path;
  std::string ordering = "canonical";
  bool json = false;
  std::size_t max_vertices = 4096;
  std::size_t max_support = 1'000'000;
  std::string grid_step = "1/8";
  int restarts = 16;
  double tol = 1e-9;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  std::string l_nodes;
  std::string k_nodes;
  std::string family;
  std::size_t limit = 0;
  std::size_t samples = 0;
  bool oracle = false;
};

NodeSet parse_nodes(const std::string& text, const RootedTree& tree, const char* flag) {
  NodeSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    NodeId u = 0;
    try {
      std::size_t used = 0;
      u = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string(flag) + ": '" + item + "' is not a node id");
    }
    if (!tree.contains(u)) throw InputError(std::string(flag) + ": unknown node " + item);
    out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> coord_names(const NodeSet& ids) {
  std::vector<std::string> out;
  for (auto v : ids) out.push_back(source_coord(v));
  return out;
}

std::string bits(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

class Command {
 public:
  Command(Options opts, std::ostream& out) : opts_(std::move(opts)), out_(out) {
    settings_.limits.max_vertices = opts_.max_vertices;
    settings_.solver.grid_step = parse_probability(opts_.grid_step);
    settings_.solver.restarts = opts_.restarts;
    settings_.solver.tolerance = opts_.tol;
    settings_.solver.seed = opts_.seed;
    settings_.solver.oracle = opts_.oracle;
  }

  int run() {
    if (opts_.verb == "check") return check();
    const Instance instance = load_instance(opts_.path);
    if (opts_.verb == "graph") return graph(instance);
    if (opts_.verb == "entropy") return entropy(instance);
    if (opts_.verb == "region") return region(instance);
    if (opts_.verb == "cutset") return cutset(instance);
    if (opts_.verb == "build-aux") return build_aux(instance);
    if (opts_.verb == "validate-aux") return validate_aux(instance);
    if (opts_.verb == "simulate") return simulate(instance);
    return orderings(instance);
  }

 private:
  int check() {
    const Instance instance = load_instance(opts_.path);
    const auto verdict = markov_property_check(instance.tree, instance.sources);
    if (opts_.json) {
      json j{{"tree", "ok"}, {"markov", verdict.holds ? "holds" : "violated"}};
      if (verdict.witness) j["violated_at"] = verdict.witness->node;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "tree: ok; markov: "
           << (verdict.holds ? std::string("holds")
                             : "violated-at(" + std::to_string(verdict.witness->node) + ")")
           << "\n";
    }
    return kExitOk;
  }

  std::pair<NodeSet, NodeSet> split(const Instance& instance) const {
    if (opts_.l_nodes.empty()) throw InputError("--L is required");
    const NodeSet l = parse_nodes(opts_.l_nodes, instance.tree, "--L");
    const NodeSet k = opts_.k_nodes.empty()
                          ? set_difference(instance.tree.nodes(), l)
                          : parse_nodes(opts_.k_nodes, instance.tree, "--K");
    return {l, k};
  }

  int graph(const Instance& instance) {
    const auto [l, k] = split(instance);
    const Joint joint = instance.sources.joint();
    const auto spec = make_spec(joint, coord_names(l), coord_names(k));
    const CharGraph g = build_char_graph(joint, spec, instance.function, settings_.limits);
    const auto mis = maximal_independent_sets(g, settings_.limits);
    const auto part = check_partition(mis, g);
    if (opts_.json) {
      json j = to_json(g);
      j["maximal_independent_sets"] = json::array();
      for (const auto& s : mis.sets) j["maximal_independent_sets"].push_back(s);
      j["partition"] = part.is_partition;
      out_ << j.dump(2) << "\n";
      return kExitOk;
    }
    write_edge_list(out_, g);
    out_ << "# maximal independent sets " << mis.sets.size() << "\n";
    for (const auto& s : mis.sets) out_ << "# " << format_vertex_set(g, s) << "\n";
    if (part.is_partition) {
      out_ << "# partition: yes\n";
    } else if (part.overlap) {
      out_ << "# partition: no (" << g.label(part.overlap->vertex) << " in "
           << format_vertex_set(g, part.overlap->first) << " and "
           << format_vertex_set(g, part.overlap->second) << ")\n";
    }
    return kExitOk;
  }

  int entropy(const Instance& instance) {
    const auto [l, k] = split(instance);
    const Joint joint = instance.sources.joint();
    const auto spec = make_spec(joint, coord_names(l), coord_names(k));
    const auto problem = make_entropy_problem(joint, spec, instance.function, settings_.limits);
    const auto solution = graph_entropy(problem, settings_.solver);
    if (opts_.json) {
      out_ << to_json(problem, solution).dump(2) << "\n";
      return kExitOk;
    }
    out_ << "H(G) = " << bits(solution.value) << " (≤ H(L|K)=" << bits(conditional_entropy(problem))
         << ")\n";
    out_ << "support:";
    for (std::size_t v = 0; v < problem.family.size(); ++v) {
      const bool used = std::any_of(solution.assignment.begin(), solution.assignment.end(),
                                    [&](const auto& row) { return row[v] > 0.0; });
      if (used) out_ << " " << format_vertex_set(problem.graph, problem.family[v]);
    }
    out_ << (solution.deterministic ? " (deterministic)" : " (randomized)") << "\n";
    if (solution.oracle) {
      out_ << "oracle: [" << bits(solution.oracle->lower, 6) << ", "
           << bits(solution.oracle->upper, 6) << "] over " << solution.oracle->points
           << " grid points; gap " << bits(*solution.certificate, 6) << "\n";
    }
    return kExitOk;
  }

  void print_nodes(const RateReport& report) {
    if (opts_.json) {
      out_ << to_json(report).dump(2) << "\n";
      return;
    }
    out_ << std::left << std::setw(6) << "node" << "bound (bits)\n";
    for (const auto& [u, b] : report.node_bounds) {
      out_ << std::left << std::setw(6) << u << bits(b, 6) << "\n";
    }
  }

  int region(const Instance& instance) {
    print_nodes(markov_rate_region(instance, settings_));
    return kExitOk;
  }

  int cutset(const Instance& instance) {
    const RateReport report = cutset_outer_bound(instance, settings_);
    if (opts_.json) {
      out_ << to_json(report).dump(2) << "\n";
      return kExitOk;
    }
    out_ << std::left << std::setw(24) << "cut" << std::setw(16) << "boundary" << "bits\n";
    for (const auto& c : report.cut_bounds) {
      out_ << std::left << std::setw(24) << format_set(c.cut) << std::setw(16)
           << format_set(c.boundary) << bits(c.bits, 6) << "\n";
    }
    return kExitOk;
  }

  Ordering chosen_ordering(const RootedTree& tree) const {
    if (opts_.ordering == "canonical") return canonical_ordering(tree);
    std::size_t index = 0;
    try {
      std::size_t used = 0;
      index = std::stoul(opts_.ordering, &used);
      if (used != opts_.ordering.size()) throw std::invalid_argument(opts_.ordering);
    } catch (const std::exception&) {
      throw InputError("--ordering must be 'canonical' or an index");
    }
    auto all = enumerate_orderings(tree, index + 1);
    if (index >= all.size()) {
      throw InputError("--ordering index " + opts_.ordering + " exceeds the " +
                       std::to_string(all.size()) + " valid orderings");
    }
    return all[index];
  }

  AuxFamily family(const Instance& instance) const {
    if (opts_.family.empty()) {
      return build_aux_family(instance, chosen_ordering(instance.tree), settings_.solver,
                              settings_.limits);
    }
    std::ifstream in(opts_.family);
    if (!in) throw InputError("cannot read " + opts_.family);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(opts_.family + ": malformed JSON at byte " + std::to_string(e.byte));
    }
    return family_from_json(instance, j);
  }

  int build_aux(const Instance& instance) {
    const AuxFamily fam = family(instance);
    if (opts_.json) {
      out_ << family_to_json(instance, fam).dump(2) << "\n";
      return kExitOk;
    }
    out_ << "ordering:";
    for (auto u : fam.ordering) out_ << " " << u;
    out_ << "\n";
    for (auto u : fam.ordering) {
      if (u == instance.tree.root()) continue;
      const auto& nm = fam.at(u);
      out_ << "node " << u << " -> " << *instance.tree.out(u) << ":";
      for (std::size_t m = 0; m < nm.messages.size(); ++m) {
        out_ << " w" << m << "=" << message_label(instance, fam, u, static_cast<int>(m));
      }
      out_ << "\n";
    }
    return kExitOk;
  }

  int validate_aux(const Instance& instance) {
    const AuxFamily fam = family(instance);
    const Ordering ord = fam.ordering.empty() ? chosen_ordering(instance.tree)
                                              : Ordering::from_sequence(instance.tree, fam.ordering);
    const auto others = enumerate_orderings(instance.tree, opts_.limit);
    const auto validity = check_aux_validity(instance, fam, ord, others);
    std::optional<InnerBound> bound;
    if (validity.ok()) bound = evaluate_inner_bound(instance, fam, opts_.max_support);
    if (opts_.json) {
      json j = to_json(validity);
      j["orderings_checked"] = others.size();
      if (bound) j["inner_bound"] = to_json(*bound);
      out_ << j.dump(2) << "\n";
    } else if (validity.ok()) {
      out_ << "valid under " << others.size() << " orderings\n";
      for (const auto& c : bound->general) {
        out_ << "sum R" << format_set(c.senders) << " >= " << bits(c.bits, 6) << "  (into "
             << c.receiver << ")\n";
      }
      if (bound->reduced) {
        for (const auto& [u, b] : *bound->reduced) {
          out_ << "R" << u << " >= " << bits(b, 6) << "  (reduced)\n";
        }
      }
    } else {
      for (const auto& v : validity.violations) {
        out_ << "violation " << to_string(v.kind) << " at node " << v.node;
        if (v.ordering) out_ << " (ordering " << *v.ordering << ")";
        out_ << ": " << v.detail << "\n";
      }
    }
    return validity.ok() ? kExitOk : kExitCertification;
  }

  int simulate(const Instance& instance) {
    const AuxFamily fam = family(instance);
    const auto result = simulate_all(instance, fam, opts_.max_support);
    std::optional<SampleReport> sampled;
    if (opts_.samples > 0) {
      sampled = sample_runs(instance, fam, opts_.samples, opts_.seed, false, opts_.max_support);
    }
    const auto& s = result.summary;
    if (opts_.json) {
      json j = to_json(s);
      if (sampled) {
        j["samples"] = {{"draws", sampled->draws}, {"errors", sampled->errors},
                        {"error_rate", sampled->error_rate}};
      }
      out_ << j.dump() << "\n";
      for (const auto& t : result.failures) out_ << trace_record(instance, t).dump() << "\n";
    } else {
      out_ << "support " << s.total_support_size << ", errors " << s.error_count << "\n";
      for (const auto& [u, h] : s.message_entropy) {
        out_ << "node " << u << ": " << s.alphabet_size.at(u) << " messages, H(W) = " << bits(h, 6)
             << "\n";
      }
      if (sampled) {
        out_ << "samples " << sampled->draws << ", errors " << sampled->errors << ", rate "
             << sampled->error_rate << "\n";
      }
      for (const auto& t : result.failures) {
        out_ << "failure: " << trace_record(instance, t).dump() << "\n";
      }
    }
    const bool failed = s.error_count > 0 || (sampled && sampled->errors > 0);
    return failed ? kExitCertification : kExitOk;
  }

  int orderings(const Instance& instance) {
    const auto all = enumerate_orderings(instance.tree, opts_.limit);
    if (opts_.json) {
      json j = json::array();
      for (const auto& o : all) j.push_back(o.sequence());
      out_ << j.dump() << "\n";
      return kExitOk;
    }
    for (const auto& o : all) {
      for (std::size_t i = 0; i < o.sequence().size(); ++i) {
        out_ << (i ? " " : "") << o.sequence()[i];
      }
      out_ << "\n";
    }
    return kExitOk;
  }

  Options opts_;
  std::ostream& out_;
  RegionSettings settings_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate regions for function computation over rooted trees", "treecomp"};
  Options opts;
  app.add_option("verb", opts.verb, "check|graph|entropy|region|cutset|build-aux|validate-aux|"
                                    "simulate|orderings")
      ->required()
      ->check(CLI::IsMember({"check", "graph", "entropy", "region", "cutset", "build-aux",
                             "validate-aux", "simulate", "orderings"}));
  app.add_option("instance", opts.path, "instance JSON file")->required();
  app.add_option("--ordering", opts.ordering, "canonical or an index into the ordering list");
  app.add_flag("--json", opts.json, "machine-readable output");
  app.add_option("--max-vertices", opts.max_vertices, "vertex cap for characteristic graphs");
  app.add_option("--max-support", opts.max_support, "support cap for simulation");
  app.add_option("--grid-step", opts.grid_step, "solver seeding grid step p/q");
  app.add_option("--restarts", opts.restarts, "solver restarts");
  app.add_option("--tol", opts.tol, "solver convergence tolerance in bits");
  app.add_option("--seed", opts.seed, "random seed");
  app.add_option("--L", opts.l_nodes, "comma-separated vertex nodes");
  app.add_option("--K", opts.k_nodes, "comma-separated side-information nodes");
  app.add_option("--family", opts.family, "family JSON (default: build one)");
  app.add_option("--limit", opts.limit, "maximum number of orderings (0 = all)");
  app.add_option("--samples", opts.samples, "Monte Carlo draws in addition to exhaustive runs");
  app.add_flag("--oracle", opts.oracle, "bracket the entropy with the grid oracle");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    return Command(opts, out).run();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return kExitGuard;
  } catch (const CertificationFailure& e) {
    err << "certification failed: " << e.what() << "\n";
    return kExitCertification;
  }
}

}  // namespace treecomp
