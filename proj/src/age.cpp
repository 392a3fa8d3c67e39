#include "aoisched/age.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "aoisched/error.hpp"

namespace aoisched {
namespace {

void check_updates(const std::vector<Update>& updates, double T) {
    double prev_delivery = 0.0;
    double prev_generation = 0.0;
    for (const Update& u : updates) {
        if (u.generation < 0.0 || u.delivery < u.generation)
            raise(ErrorCode::InvalidSchedule, "update has negative age at delivery");
        if (u.delivery < prev_delivery || u.generation < prev_generation)
            raise(ErrorCode::InvalidSchedule, "updates must be sorted by delivery and generation");
        if (u.delivery > T + tol_at(T))
            raise(ErrorCode::InvalidSchedule, "delivery lands after the deadline T");
        prev_delivery = u.delivery;
        prev_generation = u.generation;
    }
    if (T <= 0.0) raise(ErrorCode::InvalidSchedule, "deadline T must be positive");
}

} // namespace

double age_area(const std::vector<Update>& updates, double T) {
    check_updates(updates, T);
    // Telescoped trapezoid sum; g_0 = 0 matches the age ramp starting at 0.
    double area = 0.0;
    double prev_gen = 0.0;
    for (const Update& u : updates) {
        double peak = u.delivery - prev_gen;
        double reset = u.delivery - u.generation;
        area += 0.5 * peak * peak - 0.5 * reset * reset;
        prev_gen = u.generation;
    }
    double tail = T - prev_gen;
    area += 0.5 * tail * tail;
    return area;
}

double age_area(const TwoHopSchedule& sched, double T) { return age_area(updates_of(sched), T); }

double age_objective(const std::vector<Update>& updates, double T) {
    return 2.0 * age_area(updates, T);
}

AgeCurve age_curve(const std::vector<Update>& updates, double T) {
    check_updates(updates, T);
    AgeCurve curve;
    curve.points.reserve(updates.size() * 2 + 2);
    curve.points.push_back({0.0, 0.0});
    double prev_gen = 0.0;
    for (const Update& u : updates) {
        curve.points.push_back({u.delivery, u.delivery - prev_gen}); // peak
        curve.points.push_back({u.delivery, u.delivery - u.generation}); // reset
        prev_gen = u.generation;
    }
    curve.points.push_back({T, T - prev_gen});
    return curve;
}

double age_at(const AgeCurve& curve, double t) {
    if (curve.points.empty()) raise(ErrorCode::InvalidSchedule, "empty age curve");
    if (t <= curve.points.front().time) return curve.points.front().age;
    if (t >= curve.points.back().time) return curve.points.back().age;
    // Last breakpoint at or before t; taking the later of an equal-time pair
    // makes the evaluation right-continuous at drops.
    std::size_t i = 0;
    while (i + 1 < curve.points.size() && curve.points[i + 1].time <= t) ++i;
    const auto& a = curve.points[i];
    if (a.time == t) return a.age;
    const auto& b = curve.points[i + 1];
    double w = (t - a.time) / (b.time - a.time);
    return a.age + w * (b.age - a.age);
}

std::string age_curve_csv(const AgeCurve& curve) {
    std::string out = "time,age\n";
    char buf[80];
    for (const auto& p : curve.points) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", p.time, p.age);
        out += buf;
    }
    return out;
}

std::vector<Update> updates_of(const TwoHopSchedule& sched) {
    std::vector<Update> updates(sched.n());
    for (std::size_t i = 0; i < sched.n(); ++i)
        updates[i] = {sched.source_tx[i], sched.deliveries[i]};
    return updates;
}

std::vector<Update> updates_of_single_hop(const std::vector<double>& tx, double d) {
    std::vector<Update> updates(tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) updates[i] = {tx[i], tx[i] + d};
    return updates;
}

} // namespace aoisched
