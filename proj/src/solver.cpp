#include "aoisched/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "aoisched/age.hpp"
#include "aoisched/error.hpp"
#include "aoisched/transform.hpp"
#include "aoisched/validate.hpp"

namespace aoisched {
namespace {

void require_feasible_single_hop(const SingleHopInstance& inst) {
    Verdict verdict = validate_single_hop(inst);
    if (verdict.pass) return;
    std::string msg = "no schedule meets the deadline;";
    for (const Violation& v : verdict.violations) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), " [i=%zu %s needs T>=%.12g]", v.index, v.condition.c_str(),
                      v.required);
        msg += buf;
    }
    raise(ErrorCode::InfeasibleInstance, msg);
}

} // namespace

const char* branch_name(Branch b) {
    switch (b) {
    case Branch::SmallHorizon: return "SmallHorizon";
    case Branch::BalancedFeasible: return "BalancedFeasible";
    case Branch::AmendedAtN0: return "AmendedAtN0";
    case Branch::AmendedViaSmallHorizonBranch: return "AmendedViaSmallHorizonBranch";
    }
    return "?";
}

double gap_objective(const InterUpdateVector& x) {
    double sum = 0.0;
    for (double v : x.values) sum += v * v;
    return sum;
}

InterUpdateVector solve_small_horizon(const SingleHopInstance& raw) {
    SingleHopInstance inst = normalize(raw);
    require_feasible_single_hop(inst);
    const std::size_t n = inst.n();
    const double d = inst.d;
    const double T = inst.T;
    const double nd = static_cast<double>(n);
    if (!(geq_tol(T, nd * d) && T < (nd + 1.0) * d))
        raise(ErrorCode::WrongBranch, "closed form needs N d <= T < (N+1) d");

    // The first gap absorbs everything the energy constraints force; the
    // middle gaps sit on the service-time floor; the last gap takes the rest.
    double x1 = (T - (nd - 2.0) * d) / 2.0;
    for (std::size_t k = 1; k <= n; ++k)
        x1 = std::max(x1, inst.arrivals[k - 1] - (static_cast<double>(k) - 2.0) * d);

    InterUpdateVector x;
    x.values.assign(n + 1, 2.0 * d);
    x.values[0] = x1;
    x.values[n] = T - (nd - 2.0) * d - x1;
    return x;
}

InterUpdateVector inter_update_balancing(const SingleHopInstance& raw,
                                         std::vector<BalanceSegment>* segments,
                                         std::vector<BalanceRun>* runs) {
    SingleHopInstance inst = normalize(raw);
    require_feasible_single_hop(inst);
    const std::size_t n = inst.n();
    const double d = inst.d;
    const double T = inst.T;
    if (!geq_tol(T, (static_cast<double>(n) + 1.0) * d))
        raise(ErrorCode::WrongBranch, "balancing needs T >= (N+1) d");

    InterUpdateVector x;
    x.values.assign(n + 1, 0.0);

    // Repeatedly level the gaps after the current reference arrival. Each
    // pass ends at the candidate with the largest average spacing; ties go to
    // the largest index so later passes never revisit a leveled block.
    std::size_t ref = 0;       // i_k of the previous pass (0 = virtual origin)
    double ref_arrival = 0.0;  // s_{i_k}, with s_0 = 0
    while (ref < n + 1) {
        BalanceRun run;
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_j = ref + 1;
        for (std::size_t j = ref + 1; j <= n + 1; ++j) {
            double numer = (j == n + 1) ? (T - d - ref_arrival) : (inst.arrivals[j - 1] - ref_arrival);
            double slope = numer / static_cast<double>(j - ref);
            run.candidates.emplace_back(j, slope);
            if (slope >= best - tol_at(best) || j == ref + 1) {
                if (slope > best) best = slope;
                best_j = j; // >= keeps the largest maximizer on ties
            }
        }
        double value = best + d;
        for (std::size_t i = ref + 1; i <= best_j; ++i) x.values[i - 1] = value;
        if (segments) segments->push_back({ref + 1, best_j, value});
        if (runs) {
            run.chosen = best_j;
            run.value = value;
            runs->push_back(run);
        }
        ref = best_j;
        if (ref <= n) ref_arrival = inst.arrivals[ref - 1];
    }
    return x;
}

InterUpdateVector amend(const InterUpdateVector& x_e, const SingleHopInstance& raw,
                        SolveTrace* trace) {
    SingleHopInstance inst = normalize(raw);
    const std::size_t n = inst.n();
    if (x_e.size() != n + 1)
        raise(ErrorCode::InternalInconsistency, "inter-update vector length does not match instance");
    const double d = inst.d;

    // First index whose service-time floor is violated, scanned in natural
    // order: x_i >= 2d for 2..N, then x_{N+1} >= d.
    std::size_t n0 = 0;
    for (std::size_t i = 2; i <= n && n0 == 0; ++i)
        if (x_e[i - 1] < 2.0 * d - tol_at(2.0 * d)) n0 = i;
    if (n0 == 0 && x_e[n] < d - tol_at(d)) n0 = n + 1;

    if (n0 == 0) {
        if (trace) trace->branch = Branch::BalancedFeasible;
        return x_e;
    }
    if (n0 == n + 1 && n >= 2)
        raise(ErrorCode::InternalInconsistency,
              "balancing output violates only the final gap; unreachable for N >= 2");
    if (trace) trace->n0 = n0;

    if (n0 == 2 && !nearly_equal(x_e[0], inst.arrivals[0] + d)) {
        // x_1 was set by horizon averaging, not by the first arrival: the
        // whole vector collapses to the tight-horizon shape.
        if (trace) trace->branch = Branch::AmendedViaSmallHorizonBranch;
        const double T = inst.T;
        const double nd = static_cast<double>(n);
        double x1 = (T - (nd - 2.0) * d) / 2.0;
        for (std::size_t k = 1; k <= n; ++k)
            x1 = std::max(x1, inst.arrivals[k - 1] - (static_cast<double>(k) - 2.0) * d);
        InterUpdateVector x;
        x.values.assign(n + 1, 2.0 * d);
        x.values[0] = x1;
        x.values[n] = T - (nd - 2.0) * d - x1;
        return x;
    }

    // Keep the prefix, pin everything from n0 on at the service floor, and
    // give the final gap whatever the fixed total leaves over.
    if (trace) trace->branch = Branch::AmendedAtN0;
    InterUpdateVector x;
    x.values.assign(x_e.values.begin(), x_e.values.end());
    for (std::size_t i = n0; i <= n; ++i) x.values[i - 1] = 2.0 * d;
    double head = 0.0;
    for (std::size_t i = 1; i <= n; ++i) head += x.values[i - 1];
    x.values[n] = inst.T + static_cast<double>(n) * d - head;
    return x;
}

SingleHopSolution solve_single_hop(const SingleHopInstance& raw) {
    SingleHopInstance inst = normalize(raw);
    require_feasible_single_hop(inst);
    const double nd = static_cast<double>(inst.n());

    SingleHopSolution sol;
    if (inst.T < (nd + 1.0) * inst.d) {
        sol.trace.branch = Branch::SmallHorizon;
        sol.x = solve_small_horizon(inst);
    } else {
        sol.trace.x_e = inter_update_balancing(inst, &sol.trace.segments, &sol.trace.runs);
        sol.x = amend(sol.trace.x_e, inst, &sol.trace);
    }
    sol.trace.x_star = sol.x;

    auto issues = check_inter_update(sol.x, inst);
    if (!issues.empty())
        raise(ErrorCode::InternalInconsistency, "solver output invalid: " + issues.front());
    sol.tx = x_to_single_hop_tx(sol.x, inst.d);
    sol.area = age_area(updates_of_single_hop(sol.tx, inst.d), inst.T);
    return sol;
}

TwoHopSolution solve_two_hop(const TwoHopInstance& raw) {
    Verdict verdict = validate_two_hop(raw);
    if (!verdict.pass) {
        std::string msg = "no schedule meets the deadline;";
        for (const Violation& v : verdict.violations) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), " [i=%zu %s needs T>=%.12g]", v.index, v.condition.c_str(),
                          v.required);
            msg += buf;
        }
        raise(ErrorCode::InfeasibleInstance, msg);
    }
    TwoHopInstance inst = normalize(raw);

    TwoHopSolution sol;
    sol.reduced = to_single_hop(inst);
    SingleHopSolution reduced_sol = solve_single_hop(sol.reduced);
    sol.trace = reduced_sol.trace;
    sol.schedule = x_to_two_hop(reduced_sol.x, inst);
    sol.area = age_area(sol.schedule, inst.T);
    return sol;
}

GreedyResult greedy_two_hop(const TwoHopInstance& raw) {
    TwoHopInstance inst = normalize(raw);
    const std::size_t n = inst.n();

    GreedyResult res;
    res.schedule.source_tx.resize(n);
    res.schedule.relay_tx.resize(n);
    res.schedule.deliveries.resize(n);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t = (i == 0) ? inst.source_arrivals[0]
                     : std::max(inst.source_arrivals[i], res.schedule.relay_tx[i - 1] + inst.d_bar);
        double t_bar = std::max(inst.relay_arrivals[i], t + inst.d);
        res.schedule.source_tx[i] = t;
        res.schedule.relay_tx[i] = t_bar;
        res.schedule.deliveries[i] = t_bar + inst.d_bar;
    }
    res.within_deadline = geq_tol(inst.T, res.schedule.deliveries[n - 1]);
    if (res.within_deadline) res.area = age_area(res.schedule, inst.T);
    return res;
}

std::vector<double> greedy_single_hop_tx(const SingleHopInstance& raw) {
    SingleHopInstance inst = normalize(raw);
    std::vector<double> tx(inst.n());
    double t = -inst.d; // so the first update starts at s_1
    for (std::size_t i = 0; i < inst.n(); ++i) {
        t = std::max(inst.arrivals[i], t + inst.d);
        tx[i] = t;
    }
    return tx;
}

} // namespace aoisched
