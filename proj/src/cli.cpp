#include "aoisched/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoisched/age.hpp"
#include "aoisched/error.hpp"
#include "aoisched/json_io.hpp"
#include "aoisched/manifest.hpp"
#include "aoisched/oracle.hpp"
#include "aoisched/sim.hpp"
#include "aoisched/solver.hpp"
#include "aoisched/svg.hpp"
#include "aoisched/transform.hpp"
#include "aoisched/validate.hpp"

namespace aoisched {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string g_fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string vec_str(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += g_fmt(v[i]);
    }
    return s + "]";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::InvalidConfig, "cannot write \"" + path + "\"");
    out << text;
}

// Collects everything the manifest needs while a subcommand runs.
struct RunContext {
    std::string command;
    std::string out_dir;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    RunContext(const std::vector<std::string>& argv, std::string dir)
        : out_dir(std::move(dir)) {
        command = "aoisched";
        for (const std::string& a : argv) {
            command += ' ';
            command += a;
        }
        if (!out_dir.empty()) fs::create_directories(out_dir);
    }

    std::string path(const std::string& name) const {
        return (fs::path(out_dir) / name).string();
    }

    void wrote(const std::string& p) { outputs.push_back(p); }

    void finish() {
        std::string config = command;
        for (std::uint64_t s : seeds) config += "\nseed:" + std::to_string(s);
        RunManifest m;
        m.command = command;
        m.config_hash = hash_hex(fnv1a64(config));
        m.version = kArtifactVersion;
        m.seeds = seeds;
        m.outputs = outputs;
        m.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(m, path("manifest.json"));
    }
};

json oracle_check(const SingleHopInstance& reduced, const InterUpdateVector& x_star) {
    OracleResult orc = oracle_solve(reduced);
    double solver_obj = gap_objective(x_star);
    double gap = std::fabs(solver_obj - orc.objective);
    double tol = 1e-6 * (1.0 + std::fabs(orc.objective));
    if (gap > tol)
        raise(ErrorCode::InternalInconsistency,
              "solver objective " + g_fmt(solver_obj) + " disagrees with oracle " +
                  g_fmt(orc.objective) + " (gap " + g_fmt(gap) + " > " + g_fmt(tol) + ")");
    return json{{"objective", num12(orc.objective)},
                {"solver_objective", num12(solver_obj)},
                {"gap", num12(gap)},
                {"max_violation", num12(orc.max_violation)},
                {"rounds", orc.rounds},
                {"iterations", orc.iterations}};
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
    std::string file;
    std::string age_csv;
    std::string out_dir = ".";
    bool check = false;
    bool greedy = false;
};

int do_solve(const SolveArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    RunContext ctx(argv, a.out_dir);
    LoadedInstance li = load_instance_file(a.file);
    json result;
    AgeCurve curve;
    if (li.two_hop) {
        TwoHopSolution sol = solve_two_hop(li.two);
        result = solution_to_json(sol);
        result["instance"] = instance_to_json(normalize(li.two));
        curve = age_curve(updates_of(sol.schedule), li.two.T);
        if (a.check) result["oracle"] = oracle_check(sol.reduced, sol.trace.x_star);
        if (a.greedy) {
            GreedyResult g = greedy_two_hop(normalize(li.two));
            json gj{{"schedule", schedule_to_json(g.schedule)},
                    {"within_deadline", g.within_deadline}};
            gj["area"] = g.within_deadline ? num12(g.area) : json(nullptr);
            result["greedy"] = gj;
        }
    } else {
        SingleHopInstance norm = normalize(li.single);
        SingleHopSolution sol = solve_single_hop(norm);
        result = solution_to_json(sol, norm.d);
        result["instance"] = instance_to_json(norm);
        curve = age_curve(updates_of_single_hop(sol.tx, norm.d), norm.T);
        if (a.check) result["oracle"] = oracle_check(norm, sol.trace.x_star);
        if (a.greedy) {
            std::vector<double> gtx = greedy_single_hop_tx(norm);
            double garea = age_area(updates_of_single_hop(gtx, norm.d), norm.T);
            result["greedy"] = json{{"tx", array12(gtx)}, {"area", num12(garea)}};
        }
    }
    out << result.dump(2) << "\n";
    if (!a.age_csv.empty()) {
        write_text(a.age_csv, age_curve_csv(curve));
        ctx.wrote(a.age_csv);
    }
    ctx.finish();
    return kExitOk;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    double d = 0.0;
    double d_bar = 0.0;
    double horizon = 1000.0;
    int reps = 100;
    std::uint64_t seed = 12345;
    std::string policy = "BestEffortUniform";
    std::string sweep_spec;
    std::string age_csv;
    std::string out_dir = ".";
};

std::vector<double> parse_sweep(const std::string& s) {
    double lo = 0, hi = 0, step = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &extra) != 3)
        raise(ErrorCode::InvalidConfig, "--sweep expects lo:hi:step");
    if (!(lo > 0.0) || !(step > 0.0) || hi < lo)
        raise(ErrorCode::InvalidConfig, "--sweep needs 0 < lo <= hi and step > 0");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double v = lo + i * step;
        if (v > hi + 1e-9 * step) break;
        grid.push_back(v);
    }
    return grid;
}

json sweep_plot(const std::vector<SweepRow>& rows, const RunContext& ctx, bool log_x,
                const std::string& stem, const std::string& x_label,
                std::vector<std::string>* outputs) {
    // One series per policy plus the dashed theoretical floor.
    PlotSpec spec;
    spec.title = "time-average age vs " + x_label;
    spec.x_label = x_label;
    spec.y_label = "time-average age";
    spec.log_x = log_x;
    std::vector<PlotSeries> series;
    auto find = [&](Policy p) -> PlotSeries* {
        for (PlotSeries& s : series)
            if (s.label == policy_name(p)) return &s;
        series.push_back(PlotSeries{policy_name(p), {}, {}, false});
        return &series.back();
    };
    PlotSeries bound{"lower bound", {}, {}, true};
    for (const SweepRow& r : rows) {
        double x = log_x ? r.horizon : r.d_plus_dbar;
        PlotSeries* s = find(r.policy);
        s->x.push_back(x);
        s->y.push_back(r.mean_aoi);
        if (bound.x.empty() || bound.x.back() != x) {
            bound.x.push_back(x);
            bound.y.push_back(r.lower_bound);
        }
    }
    series.push_back(bound);
    std::string svg_path = ctx.path(stem + ".svg");
    write_text(svg_path, render_svg(spec, series));
    outputs->push_back(svg_path);
    return json{{"svg", svg_path}};
}

int do_simulate(const SimulateArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    RunContext ctx(argv, a.out_dir);
    ctx.seeds.push_back(a.seed);
    if (!a.sweep_spec.empty()) {
        OnlineConfig base;
        base.horizon = a.horizon;
        base.replications = a.reps;
        base.seed = a.seed;
        std::vector<SweepRow> rows = sweep(parse_sweep(a.sweep_spec), base);
        std::string csv_path = ctx.path("sweep.csv");
        write_text(csv_path, sweep_csv(rows));
        ctx.wrote(csv_path);
        json plotted = sweep_plot(rows, ctx, false, "sweep", "d + d_bar", &ctx.outputs);
        json summary{{"csv", csv_path},
                     {"svg", plotted["svg"]},
                     {"rows", rows.size()},
                     {"horizon", num12(a.horizon)},
                     {"replications", a.reps},
                     {"seed", a.seed}};
        out << summary.dump(2) << "\n";
        ctx.finish();
        return kExitOk;
    }

    OnlineConfig cfg;
    cfg.d = a.d;
    cfg.d_bar = a.d_bar;
    cfg.horizon = a.horizon;
    cfg.replications = a.reps;
    cfg.seed = a.seed;
    cfg.policy = policy_from_name(a.policy);
    cfg.record_age_curve = !a.age_csv.empty();
    SimBatch batch = run_policy(cfg);
    json result = summary_to_json(batch.summary);
    result["policy"] = policy_name(cfg.policy);
    result["d"] = num12(cfg.d);
    result["d_bar"] = num12(cfg.d_bar);
    result["horizon"] = num12(cfg.horizon);
    result["seed"] = cfg.seed;
    result["lower_bound"] = num12(lower_bound(cfg.d, cfg.d_bar));
    result["rate_bound"] = num12(rate_bound(cfg.d, cfg.d_bar));
    out << result.dump(2) << "\n";
    if (!a.age_csv.empty()) {
        write_text(a.age_csv, age_curve_csv(batch.per_rep.front().age_curve));
        ctx.wrote(a.age_csv);
    }
    ctx.finish();
    return kExitOk;
}

// ---- reproduce -------------------------------------------------------------

struct ReproduceArgs {
    std::string which;
    std::string out_dir;
    int reps = 100;
    std::uint64_t seed = 12345;
    double horizon = 5000.0;
};

void reproduce_offline(RunContext& ctx) {
    struct Example {
        const char* name;
        TwoHopInstance inst;
    };
    const Example examples[] = {
        {"example1", {{2, 6, 7, 11, 13}, {1, 4, 9, 10, 15}, 1, 2, 19}},
        {"example2_T16", {{0, 4, 4, 9, 13}, {1, 3, 6, 10, 12}, 1, 2, 16}},
        {"example2_T18", {{0, 4, 4, 9, 13}, {1, 3, 6, 10, 12}, 1, 2, 18}},
    };
    for (const Example& ex : examples) {
        TwoHopSolution sol = solve_two_hop(ex.inst);
        GreedyResult g = greedy_two_hop(ex.inst);
        json j = solution_to_json(sol);
        j["instance"] = instance_to_json(ex.inst);
        json gj{{"schedule", schedule_to_json(g.schedule)},
                {"within_deadline", g.within_deadline}};
        gj["area"] = g.within_deadline ? num12(g.area) : json(nullptr);
        j["greedy"] = gj;
        std::string json_path = ctx.path(std::string(ex.name) + ".json");
        write_text(json_path, j.dump(2) + "\n");
        ctx.wrote(json_path);

        AgeCurve opt_curve = age_curve(updates_of(sol.schedule), ex.inst.T);
        std::string csv_path = ctx.path(std::string(ex.name) + "_age.csv");
        write_text(csv_path, age_curve_csv(opt_curve));
        ctx.wrote(csv_path);

        PlotSpec spec;
        spec.title = std::string(ex.name) + ": age at the destination";
        spec.x_label = "time";
        spec.y_label = "age";
        std::vector<PlotSeries> series;
        PlotSeries opt{"optimal", {}, {}, false};
        for (const AgeCurve::Point& p : opt_curve.points) {
            opt.x.push_back(p.time);
            opt.y.push_back(p.age);
        }
        series.push_back(opt);
        if (g.within_deadline) {
            AgeCurve gc = age_curve(updates_of(g.schedule), ex.inst.T);
            PlotSeries gs{"greedy", {}, {}, true};
            for (const AgeCurve::Point& p : gc.points) {
                gs.x.push_back(p.time);
                gs.y.push_back(p.age);
            }
            series.push_back(gs);
        }
        std::string svg_path = ctx.path(std::string(ex.name) + "_age.svg");
        write_text(svg_path, render_svg(spec, series));
        ctx.wrote(svg_path);
    }
}

void reproduce_online_sweep(RunContext& ctx, const ReproduceArgs& a) {
    OnlineConfig base;
    base.horizon = a.horizon;
    base.replications = a.reps;
    base.seed = a.seed;
    std::vector<SweepRow> rows = sweep({0.1, 0.25, 0.5, 1.0, 1.5, 2.0}, base);
    std::string csv_path = ctx.path("sweep.csv");
    write_text(csv_path, sweep_csv(rows));
    ctx.wrote(csv_path);
    sweep_plot(rows, ctx, false, "sweep", "d + d_bar", &ctx.outputs);
}

void reproduce_aoi_vs_t(RunContext& ctx, const ReproduceArgs& a) {
    const double horizons[] = {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
    std::string csv = "horizon,policy,mean_aoi,std_aoi,mean_rate,lower_bound,reps,seed\n";
    std::vector<SweepRow> rows;
    for (double T : horizons) {
        for (Policy p : {Policy::BestEffortUniform, Policy::Greedy}) {
            OnlineConfig cfg;
            cfg.d = 0.125;
            cfg.d_bar = 0.125; // d + d_bar = 0.25
            cfg.horizon = T;
            cfg.replications = a.reps;
            cfg.seed = a.seed;
            cfg.policy = p;
            SimBatch batch = run_policy(cfg);
            char buf[256];
            std::snprintf(buf, sizeof buf, "%.12g,%s,%.12g,%.12g,%.12g,%.12g,%d,%llu\n", T,
                          policy_name(p), batch.summary.mean_aoi, batch.summary.std_aoi,
                          batch.summary.mean_rate, lower_bound(cfg.d, cfg.d_bar), a.reps,
                          static_cast<unsigned long long>(a.seed));
            csv += buf;
            SweepRow row;
            row.d_plus_dbar = 0.25;
            row.policy = p;
            row.mean_aoi = batch.summary.mean_aoi;
            row.std_aoi = batch.summary.std_aoi;
            row.mean_rate = batch.summary.mean_rate;
            row.lower_bound = lower_bound(cfg.d, cfg.d_bar);
            row.reps = a.reps;
            row.horizon = T;
            row.seed = a.seed;
            rows.push_back(row);
        }
    }
    std::string csv_path = ctx.path("aoi_vs_T.csv");
    write_text(csv_path, csv);
    ctx.wrote(csv_path);
    sweep_plot(rows, ctx, true, "aoi_vs_T", "horizon T", &ctx.outputs);
}

int do_reproduce(const ReproduceArgs& a, const std::vector<std::string>& argv,
                 std::ostream& out) {
    std::string out_dir = a.out_dir.empty() ? "reproduce_" + a.which : a.out_dir;
    RunContext ctx(argv, out_dir);
    if (a.which == "offline_examples") {
        reproduce_offline(ctx);
    } else if (a.which == "online_sweep") {
        ctx.seeds.push_back(a.seed);
        reproduce_online_sweep(ctx, a);
    } else if (a.which == "aoi_vs_T") {
        ctx.seeds.push_back(a.seed);
        reproduce_aoi_vs_t(ctx, a);
    } else {
        raise(ErrorCode::InvalidConfig,
              "unknown target '" + a.which +
                  "' (expected offline_examples, online_sweep, or aoi_vs_T)");
    }
    ctx.finish();
    json summary{{"target", a.which}, {"out_dir", out_dir}, {"outputs", ctx.outputs}};
    out << summary.dump(2) << "\n";
    return kExitOk;
}

// ---- trace -----------------------------------------------------------------

struct TraceArgs {
    std::string file;
    std::string out_dir = ".";
};

int do_trace(const TraceArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    RunContext ctx(argv, a.out_dir);
    std::ifstream in(a.file, std::ios::binary);
    if (!in) raise(ErrorCode::ParseError, "cannot open instance file \"" + a.file + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    out << trace_report(buf.str());
    ctx.finish();
    return kExitOk;
}

} // namespace

std::string trace_report(const std::string& instance_json_text) {
    LoadedInstance li = load_instance_json(instance_json_text);
    std::ostringstream os;
    SolveTrace trace;
    if (li.two_hop) {
        TwoHopInstance norm = normalize(li.two);
        TwoHopSolution sol = solve_two_hop(norm);
        trace = sol.trace;
        os << "two-hop instance: N=" << norm.n() << ", d=" << g_fmt(norm.d)
           << ", d_bar=" << g_fmt(norm.d_bar) << ", T=" << g_fmt(norm.T) << "\n";
        os << "reduced single-hop: arrivals=" << vec_str(sol.reduced.arrivals)
           << ", d=" << g_fmt(sol.reduced.d) << ", T=" << g_fmt(sol.reduced.T) << "\n";
    } else {
        SingleHopInstance norm = normalize(li.single);
        SingleHopSolution sol = solve_single_hop(norm);
        trace = sol.trace;
        os << "single-hop instance: N=" << norm.n() << ", d=" << g_fmt(norm.d)
           << ", T=" << g_fmt(norm.T) << "\n";
    }

    if (trace.branch == Branch::SmallHorizon) {
        os << "branch: SmallHorizon closed form (N d <= T < (N+1) d); no balancing runs\n";
    } else {
        for (std::size_t k = 0; k < trace.runs.size(); ++k) {
            const BalanceRun& run = trace.runs[k];
            os << "run " << k + 1 << ": i" << k + 1 << "=" << run.chosen << ", value "
               << g_fmt(run.value) << "; candidates:";
            for (std::size_t c = 0; c < run.candidates.size(); ++c) {
                os << (c ? ", " : " ") << "j=" << run.candidates[c].first << " slope "
                   << g_fmt(run.candidates[c].second);
            }
            os << "\n";
        }
        os << "x_e = " << vec_str(trace.x_e.values) << "\n";
        switch (trace.branch) {
        case Branch::BalancedFeasible:
            os << "amendment: none (x_e already feasible)\n";
            break;
        case Branch::AmendedAtN0:
            os << "amendment: n0=" << *trace.n0
               << "; clamp x_i = 2d from n0 through N, recompute x_{N+1}\n";
            break;
        case Branch::AmendedViaSmallHorizonBranch:
            os << "amendment: n0=" << *trace.n0
               << " with x_1^e > s_1 + d; small-horizon closed form applies\n";
            break;
        default: break;
        }
    }
    os << "branch: " << branch_name(trace.branch) << "\n";
    os << "x_star = " << vec_str(trace.x_star.values) << "\n";
    return os.str();
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"age-optimal status updating for energy-harvesting two-hop networks"};
    app.name("aoisched");
    app.set_version_flag("--version", kArtifactVersion);
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand(
        "solve", "optimal offline schedule for a JSON instance (single- or two-hop)");
    solve->add_option("instance", sa.file, "instance JSON file")->required();
    solve->add_flag("--check", sa.check, "cross-check against the reference minimizer");
    solve->add_flag("--greedy", sa.greedy, "include the greedy baseline schedule");
    solve->add_option("--age-csv", sa.age_csv, "write the optimal age curve as CSV");
    solve->add_option("--out", sa.out_dir, "directory for the run manifest");

    SimulateArgs ma;
    CLI::App* simulate =
        app.add_subcommand("simulate", "online best-effort policies under Poisson harvesting");
    simulate->add_option("--d", ma.d, "source service time");
    simulate->add_option("--dbar", ma.d_bar, "relay service time");
    simulate->add_option("--horizon", ma.horizon, "session length T");
    simulate->add_option("--reps", ma.reps, "independent replications");
    simulate->add_option("--seed", ma.seed, "base RNG seed");
    simulate->add_option("--policy", ma.policy,
                         "BestEffortUniform | Greedy | BestEffortWithDumping");
    simulate->add_option("--sweep", ma.sweep_spec,
                         "lo:hi:step grid of d+d_bar; runs both policies, writes CSV+SVG");
    simulate->add_option("--age-csv", ma.age_csv, "write replication 0's age curve as CSV");
    simulate->add_option("--out", ma.out_dir, "output directory");

    ReproduceArgs ra;
    CLI::App* reproduce =
        app.add_subcommand("reproduce", "regenerate the packaged offline/online studies");
    reproduce->add_option("target", ra.which,
                          "offline_examples | online_sweep | aoi_vs_T")->required();
    reproduce->add_option("--out", ra.out_dir, "output directory (default reproduce_<target>)");
    reproduce->add_option("--reps", ra.reps, "replications for the online targets");
    reproduce->add_option("--seed", ra.seed, "base RNG seed");
    reproduce->add_option("--horizon", ra.horizon, "session length for online_sweep");

    TraceArgs ta;
    CLI::App* trace =
        app.add_subcommand("trace", "narrate the balancing runs and amendment decision");
    trace->add_option("instance", ta.file, "instance JSON file")->required();
    trace->add_option("--out", ta.out_dir, "directory for the run manifest");

    try {
        std::vector<const char*> args;
        args.reserve(argv.size() + 1);
        args.push_back("aoisched");
        for (const std::string& a : argv) args.push_back(a.c_str());
        app.parse(static_cast<int>(args.size()), args.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed()) return do_solve(sa, argv, out);
        if (simulate->parsed()) return do_simulate(ma, argv, out);
        if (reproduce->parsed()) return do_reproduce(ra, argv, out);
        if (trace->parsed()) return do_trace(ta, argv, out);
    } catch (const AoiError& e) {
        err << e.what() << "\n";
        return e.input_error() ? kExitInput : kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

} // namespace aoisched
