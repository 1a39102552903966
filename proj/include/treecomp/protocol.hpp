#ifndef TREECOMP_PROTOCOL_HPP_
#define TREECOMP_PROTOCOL_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "treecomp/aux_family.hpp"
#include "treecomp/source_model.hpp"

namespace treecomp {

struct ProtocolTrace {
  Tuple realization;
  std::map<NodeId, int> messages;
  std::optional<int> root_output;  // empty when decoding failed
  bool correct = false;
  // A compatible support tuple whose function value differs, or the
  // realization itself when it is not compatible with its own messages.
  std::optional<Tuple> conflict;
};

struct SimulationSummary {
  std::size_t total_support_size = 0;
  std::size_t error_count = 0;
  std::map<NodeId, double> message_entropy;
  std::map<NodeId, std::size_t> alphabet_size;
};

struct SimulationResult {
  SimulationSummary summary;
  std::vector<ProtocolTrace> failures;
};

// Root decoding by intersecting the support tuples that agree on x_r and can
// emit the received messages. Requires a deterministic family and p(x) > 0.
ProtocolTrace run_single_shot(const Instance& instance, const AuxFamily& family, const Tuple& x);

// Every positive-probability realization. Throws GuardExceeded past
// `max_support` and InputError for randomized families.
SimulationResult simulate_all(const Instance& instance, const AuxFamily& family,
                              std::size_t max_support = 1'000'000);

struct SampleReport {
  std::size_t draws = 0;
  std::size_t errors = 0;
  double error_rate = 0.0;
  std::map<NodeId, std::map<int, double>> frequencies;
  std::vector<ProtocolTrace> traces;  // filled when requested
};

// Draws are a pure function of (seed, draw index).
SampleReport sample_runs(const Instance& instance, const AuxFamily& family, std::size_t n,
                         std::uint64_t seed, bool keep_traces = false,
                         std::size_t max_support = 1'000'000);

}  // namespace treecomp

#endif  // TREECOMP_PROTOCOL_HPP_
