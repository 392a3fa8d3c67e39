#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aoisched/types.hpp"

namespace aoisched {

// Online best-effort policies. All attempt transmissions on a fixed slot
// grid and need one energy unit at each node, read just before the slot
// instant (an arrival exactly at the slot is not usable in it):
//   BestEffortUniform     grid max{1, d+d_bar}; skip a slot lacking energy.
//   Greedy                grid d+d_bar: retransmit as soon as the previous
//                         delivery completes whenever both nodes have energy.
//                         Coincides with BestEffortUniform when d+d_bar >= 1.
//   BestEffortWithDumping BestEffortUniform, but a failed slot zeroes both
//                         batteries (whatever the non-empty node holds is
//                         dumped), making failure runs memoryless.
enum class Policy { BestEffortUniform, Greedy, BestEffortWithDumping };

const char* policy_name(Policy p);
Policy policy_from_name(const std::string& name);

struct OnlineConfig {
    double d = 0.0;
    double d_bar = 0.0;        // d + d_bar > 0 required
    double horizon = 0.0;      // T
    int replications = 1;
    std::uint64_t seed = 0;
    Policy policy = Policy::BestEffortUniform;
    bool record_age_curve = false; // keep breakpoints (replication results only)
    bool record_slots = false;     // keep successful slot indices (schedule identity checks)
};

// One replication's outcome. Both batteries start with one unit, so slot 0
// always transmits and at least one update is delivered.
struct SimResult {
    double time_avg_aoi = 0.0;               // exact area / T
    std::int64_t delivered = 0;              // N(T): deliveries within [0, T]
    std::int64_t failed_slots = 0;           // K(T): scheduled slots skipped
    double update_rate = 0.0;                // delivered / T
    std::vector<std::int64_t> failure_runs;  // completed runs of consecutive failures
    std::vector<std::int64_t> success_slots; // slot indices, if recorded
    AgeCurve age_curve;                      // breakpoints, if recorded
};

struct SimSummary {
    double mean_aoi = 0.0;
    double std_aoi = 0.0;  // sample standard deviation across replications
    double mean_rate = 0.0;
    int replications = 0;
};

struct SimBatch {
    std::vector<SimResult> per_rep;
    SimSummary summary;
};

// Deterministic single replication on given arrival paths (each strictly
// increasing within [0, T)). Hard-asserts the per-run theorems: energy
// conservation, slot-grid rate bounds, and failure-run accounting.
SimResult simulate_on_paths(const std::vector<double>& source_arrivals,
                            const std::vector<double>& relay_arrivals,
                            const OnlineConfig& cfg);

// Runs cfg.replications independent replications. Streams are keyed by
// (replication, node) only, so different policies on the same seed see the
// same sample paths (common random numbers). (seed, config) fixes the result
// bit for bit.
SimBatch run_policy(const OnlineConfig& cfg);

// Theoretical floor on long-run average age for any online policy:
//   max{ 1/2 + d + d_bar, 3 (d + d_bar) / 2 }.
double lower_bound(double d, double d_bar);

// Ceiling on the long-run update rate: min{1, 1/(d + d_bar)}.
double rate_bound(double d, double d_bar);

// Area of one steady slot of length x when the age resets to `reset`:
// (x + reset)^2/2 - reset^2/2. The no-failure time average is
// slot_area(m, D)/m with m = max{1, D}, which equals lower_bound(d, d_bar).
double slot_area(double x, double reset);

// ---- sweep -------------------------------------------------------------------

struct SweepRow {
    double d_plus_dbar = 0.0;
    Policy policy = Policy::BestEffortUniform;
    double mean_aoi = 0.0;
    double std_aoi = 0.0;
    double mean_rate = 0.0;
    double lower_bound = 0.0;
    int reps = 0;
    double horizon = 0.0;
    std::uint64_t seed = 0;
};

// Runs BestEffortUniform and Greedy over a grid of d + d_bar values with
// common random numbers per grid point. The total service time is split
// evenly between the hops; the policies depend only on the sum.
std::vector<SweepRow> sweep(const std::vector<double>& d_plus_dbar_grid,
                            const OnlineConfig& base);

// CSV with header
// d_plus_dbar,policy,mean_aoi,std_aoi,mean_rate,lower_bound,reps,horizon,seed
std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace aoisched
