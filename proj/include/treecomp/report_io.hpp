#ifndef TREECOMP_REPORT_IO_HPP_
#define TREECOMP_REPORT_IO_HPP_

#include "json.hpp"
#include "treecomp/aux_family.hpp"
#include "treecomp/char_graph.hpp"
#include "treecomp/graph_entropy.hpp"
#include "treecomp/protocol.hpp"
#include "treecomp/rate_region.hpp"

namespace treecomp {

nlohmann::json to_json(const RateReport& report);
RateReport rate_report_from_json(const nlohmann::json& j);

// {"coords":[...], "vertices":[{"label","support"}], "edges":[[a,b],...]}
nlohmann::json to_json(const CharGraph& g);
CharGraph char_graph_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EntropyProblem& problem, const EntropySolution& solution);

nlohmann::json to_json(const SimulationSummary& summary);
// One line-delimited record per trace.
nlohmann::json trace_record(const Instance& instance, const ProtocolTrace& trace);

nlohmann::json to_json(const InnerBound& bound);
nlohmann::json to_json(const AuxValidity& validity);

// Messages list members as {"x": letter, "w": {"<child>": message index}}.
nlohmann::json family_to_json(const Instance& instance, const AuxFamily& family);
AuxFamily family_from_json(const Instance& instance, const nlohmann::json& j);

}  // namespace treecomp

#endif  // TREECOMP_REPORT_IO_HPP_
