#pragma once

#include <string>

#include <json.hpp>

#include "aoisched/sim.hpp"
#include "aoisched/solver.hpp"
#include "aoisched/types.hpp"

namespace aoisched {

// Rounds to 12 significant digits so serialized numbers are stable across
// platforms and rebuilds.
double round12(double v);
nlohmann::json num12(double v);
nlohmann::json array12(const std::vector<double>& v);

// Either flavor of instance file:
//   two-hop:    {"source_arrivals": [...], "relay_arrivals": [...],
//                "d": ..., "d_bar": ..., "T": ...}
//   single-hop: same without the relay fields.
// Throws ParseError (with line/column for malformed JSON) or InvalidInstance.
struct LoadedInstance {
    bool two_hop = false;
    SingleHopInstance single;
    TwoHopInstance two;
};

LoadedInstance load_instance_json(const std::string& text);
LoadedInstance load_instance_file(const std::string& path);

nlohmann::json instance_to_json(const TwoHopInstance& inst);
nlohmann::json instance_to_json(const SingleHopInstance& inst);

nlohmann::json schedule_to_json(const TwoHopSchedule& sched);
nlohmann::json trace_to_json(const SolveTrace& trace);
nlohmann::json solution_to_json(const TwoHopSolution& sol);
nlohmann::json solution_to_json(const SingleHopSolution& sol, double d);
nlohmann::json summary_to_json(const SimSummary& summary);

// Line/column information for a byte offset into `text` (1-based).
std::pair<int, int> line_col_of_offset(const std::string& text, std::size_t offset);

} // namespace aoisched
