#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aoisched/types.hpp"

namespace aoisched {

// Which closed-form branch produced the final schedule.
enum class Branch {
    SmallHorizon,                // N d <= T < (N+1) d closed form
    BalancedFeasible,            // balancing output already feasible
    AmendedAtN0,                 // clamped to 2d from the first violation on
    AmendedViaSmallHorizonBranch,// n0 = 2 with x_1 above s_1 + d
};

const char* branch_name(Branch b);

// One balancing pass: gaps start..end (1-based, inclusive) all receive
// `value`. For every non-final segment the prefix-sum constraint is tight at
// `end`.
struct BalanceSegment {
    std::size_t start = 0;
    std::size_t end = 0;
    double value = 0.0;
};

// Candidate set of one balancing run, kept for the trace subcommand.
struct BalanceRun {
    std::vector<std::pair<std::size_t, double>> candidates; // (index, slope)
    std::size_t chosen = 0; // i_k
    double value = 0.0;     // segment value (slope + d)
};

struct SolveTrace {
    Branch branch = Branch::BalancedFeasible;
    std::optional<std::size_t> n0;          // first infeasible index, if amended
    std::vector<BalanceSegment> segments;   // balancing output structure
    std::vector<BalanceRun> runs;           // per-run candidate sets
    InterUpdateVector x_e;                  // pre-amendment vector (empty for SmallHorizon)
    InterUpdateVector x_star;               // final vector
};

// Sum of squared gaps; the strictly convex objective all solvers minimize.
double gap_objective(const InterUpdateVector& x);

// Closed form for the tight-horizon regime N d <= T < (N+1) d:
//   x_1 = max{ (T - (N-2) d) / 2, max_k { s_k - (k-2) d } },
//   x_i = 2d (2 <= i <= N),  x_{N+1} = T - (N-2) d - x_1.
// Throws WrongBranch outside the regime, InfeasibleInstance if infeasible.
InterUpdateVector solve_small_horizon(const SingleHopInstance& inst);

// Unconstrained-by-service balancing pass for T >= (N+1) d. Repeatedly picks
// the largest candidate slope
//   (s_j - s_{i_k}) / (j - i_k)  for j in {i_k+1..N},
//   (T - d - s_{i_k}) / (N+1-i_k) for j = N+1
// (ties resolved toward the largest index) and levels that block of gaps at
// slope + d. The result meets the energy constraints but may violate the
// service-time floor; `amend` repairs that.
InterUpdateVector inter_update_balancing(const SingleHopInstance& inst,
                                         std::vector<BalanceSegment>* segments = nullptr,
                                         std::vector<BalanceRun>* runs = nullptr);

// Repairs a balancing output that dips below the service-time floor. Scans
// 2..N+1 in order for the first violation n0 of {x_i >= 2d, x_{N+1} >= d}:
//   n0 > 2 (or n0 = 2 with x_1 = s_1 + d): keep x_1..x_{n0-1}, set
//     x_i = 2d for n0 <= i <= N, x_{N+1} = T + N d - sum_{i<=N} x_i;
//   n0 = 2 with x_1 > s_1 + d: fall back to the small-horizon closed form.
// A violation at n0 = N+1 for N >= 2 is impossible for balancing output and
// raises InternalInconsistency.
InterUpdateVector amend(const InterUpdateVector& x_e, const SingleHopInstance& inst,
                        SolveTrace* trace = nullptr);

struct SingleHopSolution {
    InterUpdateVector x;
    std::vector<double> tx; // transmission epochs
    double area = 0.0;      // age integral on [0, T]
    SolveTrace trace;
};

struct TwoHopSolution {
    TwoHopSchedule schedule;
    double area = 0.0;
    SolveTrace trace;
    SingleHopInstance reduced; // combined-node instance actually solved
};

// Branch dispatch: T < (N+1) d goes to the closed form, everything else to
// balancing + amendment (the boundary T = (N+1) d balances). Validates
// feasibility first and throws InfeasibleInstance listing violations.
SingleHopSolution solve_single_hop(const SingleHopInstance& inst);

// Reduce, solve, lift back, and verify. The returned schedule forwards every
// update immediately (t_i + d = t_bar_i).
TwoHopSolution solve_two_hop(const TwoHopInstance& inst);

// Earliest-feasible baseline schedule:
//   t_1 = s_1, t_bar_i = max{s_bar_i, t_i + d}, t_{i+1} = max{s_{i+1}, t_bar_i + d_bar}.
// `within_deadline` reports whether the last delivery makes it by T; the
// schedule itself is always returned for inspection.
struct GreedyResult {
    TwoHopSchedule schedule;
    bool within_deadline = false;
    double area = 0.0; // age integral; meaningful only when within deadline
};

GreedyResult greedy_two_hop(const TwoHopInstance& inst);

// Single-hop greedy (t_i = max{s_i, t_{i-1} + d}), used to seed the oracle.
std::vector<double> greedy_single_hop_tx(const SingleHopInstance& inst);

} // namespace aoisched
