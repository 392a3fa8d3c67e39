#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <json.hpp>

#include "aoisched/age.hpp"
#include "aoisched/cli.hpp"
#include "aoisched/error.hpp"
#include "aoisched/gof.hpp"
#include "aoisched/json_io.hpp"
#include "aoisched/manifest.hpp"
#include "aoisched/oracle.hpp"
#include "aoisched/sim.hpp"
#include "aoisched/solver.hpp"
#include "aoisched/transform.hpp"
#include "aoisched/validate.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace aoisched;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
        py::list out;
        for (const json& v : j) out.append(json_to_py(v));
        return out;
    }
    case json::value_t::object: {
        py::dict out;
        for (auto it = j.begin(); it != j.end(); ++it)
            out[py::str(it.key())] = json_to_py(it.value());
        return out;
    }
    default: return py::none();
    }
}

TwoHopInstance make_two_hop(const std::vector<double>& s, const std::vector<double>& s_bar,
                            double d, double d_bar, double T) {
    TwoHopInstance inst;
    inst.source_arrivals = s;
    inst.relay_arrivals = s_bar;
    inst.d = d;
    inst.d_bar = d_bar;
    inst.T = T;
    return inst;
}

SingleHopInstance make_single_hop(const std::vector<double>& s, double d, double T) {
    SingleHopInstance inst;
    inst.arrivals = s;
    inst.d = d;
    inst.T = T;
    return inst;
}

py::dict verdict_to_py(const Verdict& v) {
    py::list violations;
    for (const Violation& viol : v.violations) {
        py::dict item;
        item["index"] = viol.index;
        item["condition"] = viol.condition;
        item["required"] = viol.required;
        violations.append(item);
    }
    py::dict out;
    out["pass"] = v.pass;
    out["violations"] = violations;
    out["sorted_warning"] = v.sorted_warning;
    out["truncated_warning"] = v.truncated_warning;
    return out;
}

py::dict summary_to_py(const SimSummary& s) {
    py::dict out;
    out["mean_aoi"] = s.mean_aoi;
    out["std_aoi"] = s.std_aoi;
    out["mean_rate"] = s.mean_rate;
    out["replications"] = s.replications;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "age-optimal status updating for energy-harvesting two-hop networks";
    m.attr("__version__") = kArtifactVersion;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const AoiError& e) {
            if (e.input_error())
                PyErr_SetString(PyExc_ValueError, e.what());
            else
                PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def(
        "solve_two_hop",
        [](const std::vector<double>& s, const std::vector<double>& s_bar, double d,
           double d_bar, double T) {
            return json_to_py(solution_to_json(solve_two_hop(make_two_hop(s, s_bar, d, d_bar, T))));
        },
        py::arg("source_arrivals"), py::arg("relay_arrivals"), py::arg("d"), py::arg("d_bar"),
        py::arg("T"), "Optimal two-hop schedule; dict with x_e, x_star, branch, schedule, area.");

    m.def(
        "solve_single_hop",
        [](const std::vector<double>& s, double d, double T) {
            SingleHopInstance inst = normalize(make_single_hop(s, d, T));
            return json_to_py(solution_to_json(solve_single_hop(inst), inst.d));
        },
        py::arg("arrivals"), py::arg("d"), py::arg("T"),
        "Optimal single-hop schedule; dict with x_e, x_star, branch, schedule, area.");

    m.def(
        "greedy_two_hop",
        [](const std::vector<double>& s, const std::vector<double>& s_bar, double d,
           double d_bar, double T) {
            GreedyResult g = greedy_two_hop(make_two_hop(s, s_bar, d, d_bar, T));
            json j{{"schedule", schedule_to_json(g.schedule)},
                   {"within_deadline", g.within_deadline}};
            j["area"] = g.within_deadline ? num12(g.area) : json(nullptr);
            return json_to_py(j);
        },
        py::arg("source_arrivals"), py::arg("relay_arrivals"), py::arg("d"), py::arg("d_bar"),
        py::arg("T"), "Earliest-feasible baseline schedule and its area.");

    m.def(
        "validate_two_hop",
        [](const std::vector<double>& s, const std::vector<double>& s_bar, double d,
           double d_bar, double T) {
            return verdict_to_py(validate_two_hop(make_two_hop(s, s_bar, d, d_bar, T)));
        },
        py::arg("source_arrivals"), py::arg("relay_arrivals"), py::arg("d"), py::arg("d_bar"),
        py::arg("T"), "Deadline feasibility verdict with per-index violations.");

    m.def(
        "oracle_solve",
        [](const std::vector<double>& s, double d, double T) {
            OracleResult r = oracle_solve(normalize(make_single_hop(s, d, T)));
            py::dict out;
            out["x"] = r.x.values;
            out["objective"] = r.objective;
            out["max_violation"] = r.max_violation;
            out["rounds"] = r.rounds;
            out["iterations"] = r.iterations;
            return out;
        },
        py::arg("arrivals"), py::arg("d"), py::arg("T"),
        "Reference convex minimizer for the reduced single-hop problem.");

    m.def(
        "age_area",
        [](const std::vector<std::pair<double, double>>& updates, double T) {
            std::vector<Update> us;
            us.reserve(updates.size());
            for (const auto& [gen, del] : updates) us.push_back(Update{gen, del});
            return age_area(us, T);
        },
        py::arg("updates"), py::arg("T"),
        "Exact area under the age curve for (generation, delivery) pairs.");

    m.def(
        "simulate",
        [](double d, double d_bar, double horizon, int replications, std::uint64_t seed,
           const std::string& policy) {
            OnlineConfig cfg;
            cfg.d = d;
            cfg.d_bar = d_bar;
            cfg.horizon = horizon;
            cfg.replications = replications;
            cfg.seed = seed;
            cfg.policy = policy_from_name(policy);
            SimBatch batch = run_policy(cfg);
            py::dict out = summary_to_py(batch.summary);
            out["lower_bound"] = lower_bound(d, d_bar);
            out["rate_bound"] = rate_bound(d, d_bar);
            out["policy"] = policy_name(cfg.policy);
            return out;
        },
        py::arg("d"), py::arg("d_bar"), py::arg("horizon"), py::arg("replications") = 100,
        py::arg("seed") = 12345, py::arg("policy") = "BestEffortUniform",
        "Monte Carlo summary of an online policy under Poisson harvesting.");

    m.def(
        "failure_run_gof",
        [](double d, double d_bar, double horizon, int replications, std::uint64_t seed) {
            OnlineConfig cfg;
            cfg.d = d;
            cfg.d_bar = d_bar;
            cfg.horizon = horizon;
            cfg.replications = replications;
            cfg.seed = seed;
            cfg.policy = Policy::BestEffortWithDumping;
            GofReport rep = failure_run_test(cfg);
            py::dict out;
            out["outcome"] = rep.outcome == GofReport::Outcome::Pass      ? "pass"
                             : rep.outcome == GofReport::Outcome::Reject  ? "reject"
                                                                          : "inconclusive";
            out["n_runs"] = rep.n_runs;
            out["q"] = rep.q;
            out["statistic"] = rep.statistic;
            out["df"] = rep.df;
            out["p_value"] = rep.p_value;
            return out;
        },
        py::arg("d"), py::arg("d_bar"), py::arg("horizon"), py::arg("replications") = 20,
        py::arg("seed") = 12345,
        "Chi-square fit of dumping-policy failure runs to the geometric law.");

    m.def("lower_bound", &lower_bound, py::arg("d"), py::arg("d_bar"),
          "Long-run average-age floor for any online policy.");
    m.def("rate_bound", &rate_bound, py::arg("d"), py::arg("d_bar"),
          "Long-run update-rate ceiling.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "In-process CLI invocation; returns (exit_code, stdout, stderr).");
}
