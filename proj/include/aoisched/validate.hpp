#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aoisched/types.hpp"

namespace aoisched {

// A single violated feasibility condition, reported per update index.
struct Violation {
    std::size_t index = 0;    // 1-based update index
    std::string condition;    // which deadline condition failed
    double required = 0.0;    // minimal T that would satisfy it
};

struct Verdict {
    bool pass = false;
    std::vector<Violation> violations;
    bool sorted_warning = false;    // arrivals arrived unsorted and were sorted
    bool truncated_warning = false; // arrival lists had unequal lengths
};

// Sorts arrival lists (flagging if they were out of order) and truncates
// unequal two-hop lists to the shorter length. Throws InvalidInstance on
// empty lists, negative times, negative service times, or T <= 0.
SingleHopInstance normalize(const SingleHopInstance& inst, Verdict* verdict = nullptr);
TwoHopInstance normalize(const TwoHopInstance& inst, Verdict* verdict = nullptr);

// Deadline feasibility of the single-hop problem:
//   T >= s_i + (N - i + 1) d   for every i.
Verdict validate_single_hop(const SingleHopInstance& inst);

// Deadline feasibility of the two-hop problem. Three condition families:
//   relay_deadline:    T >= s_bar_i + (N - i + 1) d_bar
//   source_deadline:   T >= s_i + (N - i + 1)(d + d_bar)
//   combined_deadline: T >= max{s_bar_i, s_i + d} + (N - i + 1)(d + d_bar) - d
// The first two are necessary on their own; the third (feasibility of the
// combined-node reduction) closes the gap and makes PASS sufficient.
Verdict validate_two_hop(const TwoHopInstance& inst);

} // namespace aoisched
