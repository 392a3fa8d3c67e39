#pragma once

#include <string>
#include <vector>

#include "aoisched/types.hpp"

namespace aoisched {

// Closed-form area under the age curve on [0, T] for updates sorted by
// delivery time with non-decreasing generation times (g_0 = 0):
//   sum_i [ (tau_i - g_{i-1})^2 / 2 - (tau_i - g_i)^2 / 2 ] + (T - g_N)^2 / 2.
// An empty update list yields T^2 / 2 (the curve is the bare ramp).
// Throws InvalidSchedule if a delivery lands after T or updates are unsorted.
double age_area(const std::vector<Update>& updates, double T);

// Convenience overloads building the update list from schedules.
double age_area(const TwoHopSchedule& sched, double T);

// Objective value of the raw scheduling problem (the un-halved trapezoid
// sum); equals 2 * age_area. Exposed for debugging against solver internals.
double age_objective(const std::vector<Update>& updates, double T);

// Breakpoint list of the piecewise-linear age curve. Delivery drops produce
// two breakpoints at the same time (peak, then reset value).
AgeCurve age_curve(const std::vector<Update>& updates, double T);

// Age curve value at time t (right-continuous at drops).
double age_at(const AgeCurve& curve, double t);

// CSV serialization: header "time,age", one row per breakpoint, numbers
// printed with 12 significant digits.
std::string age_curve_csv(const AgeCurve& curve);

std::vector<Update> updates_of(const TwoHopSchedule& sched);
std::vector<Update> updates_of_single_hop(const std::vector<double>& tx, double d);

} // namespace aoisched
