#include "aoisched/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aoisched/error.hpp"

namespace aoisched {

using nlohmann::json;

namespace {

double number_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) raise(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
    if (!it->is_number()) raise(ErrorCode::ParseError, std::string("field \"") + key + "\" must be a number");
    return it->get<double>();
}

std::vector<double> array_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) raise(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
    if (!it->is_array()) raise(ErrorCode::ParseError, std::string("field \"") + key + "\" must be an array");
    std::vector<double> out;
    out.reserve(it->size());
    for (const json& v : *it) {
        if (!v.is_number())
            raise(ErrorCode::ParseError, std::string("field \"") + key + "\" must hold numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json num12(double v) { return json(round12(v)); }

json array12(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(round12(x));
    return arr;
}

std::pair<int, int> line_col_of_offset(const std::string& text, std::size_t offset) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

LoadedInstance load_instance_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? static_cast<std::size_t>(e.byte) - 1 : 0;
        auto [line, col] = line_col_of_offset(text, byte);
        raise(ErrorCode::ParseError,
              "malformed JSON at line " + std::to_string(line) + ", column " +
                  std::to_string(col));
    }
    if (!j.is_object()) raise(ErrorCode::ParseError, "instance must be a JSON object");

    LoadedInstance loaded;
    loaded.two_hop = j.contains("relay_arrivals") || j.contains("d_bar");
    if (loaded.two_hop) {
        loaded.two.source_arrivals = array_field(j, "source_arrivals");
        loaded.two.relay_arrivals = array_field(j, "relay_arrivals");
        loaded.two.d = number_field(j, "d");
        loaded.two.d_bar = number_field(j, "d_bar");
        loaded.two.T = number_field(j, "T");
    } else {
        loaded.single.arrivals = array_field(j, "source_arrivals");
        loaded.single.d = number_field(j, "d");
        loaded.single.T = number_field(j, "T");
    }
    return loaded;
}

LoadedInstance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::ParseError, "cannot open instance file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_instance_json(buf.str());
}

json instance_to_json(const TwoHopInstance& inst) {
    return json{{"source_arrivals", array12(inst.source_arrivals)},
                {"relay_arrivals", array12(inst.relay_arrivals)},
                {"d", num12(inst.d)},
                {"d_bar", num12(inst.d_bar)},
                {"T", num12(inst.T)}};
}

json instance_to_json(const SingleHopInstance& inst) {
    return json{{"source_arrivals", array12(inst.arrivals)},
                {"d", num12(inst.d)},
                {"T", num12(inst.T)}};
}

json schedule_to_json(const TwoHopSchedule& sched) {
    return json{{"source_tx", array12(sched.source_tx)},
                {"relay_tx", array12(sched.relay_tx)},
                {"deliveries", array12(sched.deliveries)}};
}

json trace_to_json(const SolveTrace& trace) {
    json runs = json::array();
    for (const BalanceRun& run : trace.runs) {
        json cands = json::array();
        for (const auto& [idx, slope] : run.candidates)
            cands.push_back(json{{"index", idx}, {"slope", num12(slope)}});
        runs.push_back(json{{"candidates", cands},
                            {"chosen", run.chosen},
                            {"value", num12(run.value)}});
    }
    json segments = json::array();
    for (const BalanceSegment& seg : trace.segments)
        segments.push_back(
            json{{"start", seg.start}, {"end", seg.end}, {"value", num12(seg.value)}});
    json out{{"branch", branch_name(trace.branch)},
             {"segments", segments},
             {"runs", runs},
             {"x_e", array12(trace.x_e.values)},
             {"x_star", array12(trace.x_star.values)}};
    out["n0"] = trace.n0 ? json(*trace.n0) : json(nullptr);
    return out;
}

json solution_to_json(const TwoHopSolution& sol) {
    json out = trace_to_json(sol.trace);
    out["schedule"] = schedule_to_json(sol.schedule);
    out["area"] = num12(sol.area);
    return out;
}

json solution_to_json(const SingleHopSolution& sol, double d) {
    json out = trace_to_json(sol.trace);
    std::vector<double> deliveries;
    deliveries.reserve(sol.tx.size());
    for (double t : sol.tx) deliveries.push_back(t + d);
    out["schedule"] = json{{"tx", array12(sol.tx)}, {"deliveries", array12(deliveries)}};
    out["area"] = num12(sol.area);
    return out;
}

json summary_to_json(const SimSummary& summary) {
    return json{{"mean_aoi", num12(summary.mean_aoi)},
                {"std_aoi", num12(summary.std_aoi)},
                {"mean_rate", num12(summary.mean_rate)},
                {"replications", summary.replications}};
}

} // namespace aoisched
