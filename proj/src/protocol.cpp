#include "treecomp/protocol.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "treecomp/errors.hpp"

namespace treecomp {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) from the stream at (seed, a, b).
double unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t bits = splitmix64(splitmix64(seed ^ splitmix64(a)) + b);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

using Chooser = std::function<int(const NodeMessages&, const Tuple&)>;

class Decoder {
 public:
  Decoder(const Instance& instance, const AuxFamily& family, std::size_t max_support)
      : instance_(instance), family_(family) {
    const auto& tree = instance.tree;
    const auto& pmf = instance.sources.pmf();
    if (pmf.size() > max_support) {
      throw GuardExceeded("support has " + std::to_string(pmf.size()) +
                          " realizations, above the cap of " + std::to_string(max_support));
    }
    for (auto u : tree.nodes()) {
      if (u != tree.root()) family.at(u);
    }
    const auto bottom_up = canonical_ordering(tree).sequence();
    const NodeId root = tree.root();
    const auto& root_in = tree.in(root);
    std::size_t enumerated = 0;

    for (const auto& [x, p] : pmf) {
      // Messages each node can emit on this realization.
      std::map<NodeId, std::vector<int>> reachable;
      for (auto u : bottom_up) {
        if (u == root) continue;
        const auto& nm = family.at(u);
        std::set<int> out;
        Tuple input{x[instance.sources.index_of(u)]};
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
          if (i == nm.inputs.size()) {
            const auto it = nm.rows.find(input);
            if (it == nm.rows.end()) return;
            for (const auto& [m, q] : it->second) {
              if (sgn(q) > 0) out.insert(m);
            }
            return;
          }
          for (int m : reachable[nm.inputs[i]]) {
            input.push_back(m);
            fill(i + 1);
            input.pop_back();
          }
        };
        fill(0);
        reachable[u].assign(out.begin(), out.end());
      }

      // Every received-message combination this tuple is compatible with.
      const int value = instance.function.at(x);
      Tuple key{x[instance.sources.index_of(root)]};
      std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == root_in.size()) {
          if (++enumerated > 16 * max_support) {
            throw GuardExceeded("compatibility table exceeds its cap");
          }
          table_[key].try_emplace(value, x);
          return;
        }
        for (int m : reachable[root_in[i]]) {
          key.push_back(m);
          walk(i + 1);
          key.pop_back();
        }
      };
      walk(0);
    }
  }

  std::map<NodeId, int> encode(const Tuple& x, const Chooser& choose) const {
    std::map<NodeId, int> messages;
    for (auto u : family_.ordering) {
      if (u == instance_.tree.root()) continue;
      const auto& nm = family_.at(u);
      Tuple input{x[instance_.sources.index_of(u)]};
      for (auto c : nm.inputs) {
        const auto it = messages.find(c);
        if (it == messages.end()) {
          throw InputError("schedule sends node " + std::to_string(u) + " before node " +
                           std::to_string(c));
        }
        input.push_back(it->second);
      }
      messages[u] = choose(nm, input);
    }
    return messages;
  }

  ProtocolTrace decode(const Tuple& x, std::map<NodeId, int> messages) const {
    const NodeId root = instance_.tree.root();
    ProtocolTrace trace;
    trace.realization = x;
    Tuple key{x[instance_.sources.index_of(root)]};
    for (auto c : instance_.tree.in(root)) key.push_back(messages.at(c));
    trace.messages = std::move(messages);
    const int truth = instance_.function.at(x);
    const auto it = table_.find(key);
    if (it == table_.end() || !it->second.count(truth)) {
      trace.conflict = x;
      return trace;
    }
    if (it->second.size() == 1) {
      trace.root_output = truth;
      trace.correct = true;
      return trace;
    }
    for (const auto& [value, witness] : it->second) {
      if (value != truth) {
        trace.conflict = witness;
        break;
      }
    }
    return trace;
  }

 private:
  const Instance& instance_;
  const AuxFamily& family_;
  // (x_r, received messages) -> function value -> first compatible tuple.
  std::map<Tuple, std::map<int, Tuple>> table_;
};

int deterministic_choice(const NodeMessages& nm, const Tuple& input) {
  return nm.message_for(input);
}

void require_deterministic(const AuxFamily& family) {
  if (!family.deterministic()) {
    throw InputError("exhaustive simulation requires a deterministic family");
  }
}

}  // namespace

ProtocolTrace run_single_shot(const Instance& instance, const AuxFamily& family, const Tuple& x) {
  if (sgn(instance.sources.probability(x)) == 0) {
    throw InputError("realization has zero probability");
  }
  require_deterministic(family);
  const Decoder decoder(instance, family, instance.sources.pmf().size());
  return decoder.decode(x, decoder.encode(x, deterministic_choice));
}

SimulationResult simulate_all(const Instance& instance, const AuxFamily& family,
                              std::size_t max_support) {
  require_deterministic(family);
  const Decoder decoder(instance, family, max_support);
  SimulationResult result;
  auto& summary = result.summary;
  std::map<NodeId, std::map<int, Rational>> mass;
  for (const auto& [x, p] : instance.sources.pmf()) {
    auto trace = decoder.decode(x, decoder.encode(x, deterministic_choice));
    for (const auto& [u, m] : trace.messages) mass[u][m] += p;
    ++summary.total_support_size;
    if (!trace.correct) {
      ++summary.error_count;
      result.failures.push_back(std::move(trace));
    }
  }
  for (const auto& [u, nm] : family.nodes) {
    std::vector<Rational> masses;
    for (const auto& [m, p] : mass[u]) masses.push_back(p);
    summary.message_entropy[u] = entropy_bits(masses);
    summary.alphabet_size[u] = nm.messages.size();
  }
  return result;
}

SampleReport sample_runs(const Instance& instance, const AuxFamily& family, std::size_t n,
                         std::uint64_t seed, bool keep_traces, std::size_t max_support) {
  const Decoder decoder(instance, family, max_support);
  std::vector<const Tuple*> support;
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& [x, p] : instance.sources.pmf()) {
    total += p.get_d();
    support.push_back(&x);
    cumulative.push_back(total);
  }

  SampleReport report;
  report.draws = n;
  std::map<NodeId, std::map<int, std::size_t>> counts;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unit(seed, i, 0) * total;
    const auto pos = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                 cumulative.begin()),
        support.size() - 1);
    const Tuple& x = *support[pos];
    const Chooser choose = [&](const NodeMessages& nm, const Tuple& input) {
      const auto it = nm.rows.find(input);
      if (it == nm.rows.end()) {
        throw InputError("node " + std::to_string(nm.node) + " has no message for this input");
      }
      const double r = unit(seed, i, static_cast<std::uint64_t>(nm.node) + 1);
      double acc = 0.0;
      for (const auto& [m, p] : it->second) {
        acc += p.get_d();
        if (r < acc) return m;
      }
      return it->second.back().first;
    };
    auto trace = decoder.decode(x, decoder.encode(x, choose));
    for (const auto& [node, m] : trace.messages) ++counts[node][m];
    if (!trace.correct) ++report.errors;
    if (keep_traces) report.traces.push_back(std::move(trace));
  }
  for (const auto& [node, per] : counts) {
    for (const auto& [m, c] : per) {
      report.frequencies[node][m] = static_cast<double>(c) / static_cast<double>(n);
    }
  }
  report.error_rate = n ? static_cast<double>(report.errors) / static_cast<double>(n) : 0.0;
  return report;
}

}  // namespace treecomp
