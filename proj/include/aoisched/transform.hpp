#pragma once

#include "aoisched/types.hpp"

namespace aoisched {

// Collapses a feasible two-hop instance into the equivalent single-hop
// ("combined node") instance:
//   s'_i = max{s_bar_i, s_i + d},  d' = d + d_bar,  T' = T + d.
// An optimal combined-node schedule forwards each update the instant the
// relay receives it, so nothing is lost in the reduction.
SingleHopInstance to_single_hop(const TwoHopInstance& inst);

// Rebuilds the two-hop schedule from an inter-update vector of the reduced
// problem: t_bar_1 = x_1 - d', t_bar_i = t_bar_{i-1} + x_i - d', t_i =
// t_bar_i - d, deliveries t_bar_i + d_bar. Verifies every schedule invariant
// against the original instance and throws InternalInconsistency on failure.
TwoHopSchedule x_to_two_hop(const InterUpdateVector& x, const TwoHopInstance& inst);

// Extracts the inter-update vector from a schedule with tight data causality
// (t_i + d = t_bar_i). Inverse of x_to_two_hop.
InterUpdateVector schedule_to_x(const TwoHopSchedule& sched, const TwoHopInstance& inst);

// Transmission epochs of the single-hop problem from its gap vector:
// t_i = sum_{j<=i} x_j - i*d; deliveries t_i + d.
std::vector<double> x_to_single_hop_tx(const InterUpdateVector& x, double d);

// Checks the inter-update vector against the reduced problem's constraint
// set; returns a human-readable list of violations (empty when valid).
//   sum x_i = T + N d, prefix_k >= s_k + k d, x_i >= 2d (2<=i<=N), x_{N+1} >= d
std::vector<std::string> check_inter_update(const InterUpdateVector& x,
                                            const SingleHopInstance& inst);

} // namespace aoisched
