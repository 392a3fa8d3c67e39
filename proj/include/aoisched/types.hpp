#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace aoisched {

// Relative tolerance used for every floating-point comparison in the library.
inline constexpr double kRelTol = 1e-9;

// Absolute slack for a comparison whose operands live at magnitude `scale`.
inline double tol_at(double scale) { return kRelTol * (1.0 + std::fabs(scale)); }

inline bool nearly_equal(double a, double b) { return std::fabs(a - b) <= tol_at(b); }

// a >= b up to tolerance (used for constraint checks where equality is legal).
inline bool geq_tol(double a, double b) { return a >= b - tol_at(b); }

// ---- offline problem inputs -------------------------------------------------

// One sender, N unit-sized energy arrivals, fixed service time d per update,
// hard deadline T. Arrivals are in non-decreasing order.
struct SingleHopInstance {
    std::vector<double> arrivals; // s_1 <= ... <= s_N
    double d = 0.0;               // service time of one update
    double T = 0.0;               // deadline

    std::size_t n() const { return arrivals.size(); }
};

// Source -> relay -> destination chain. Both hops harvest energy; the source
// spends d per update, the relay d_bar.
struct TwoHopInstance {
    std::vector<double> source_arrivals; // s_i
    std::vector<double> relay_arrivals;  // s_bar_i
    double d = 0.0;                      // source -> relay service time
    double d_bar = 0.0;                  // relay -> destination service time
    double T = 0.0;                      // deadline

    std::size_t n() const { return source_arrivals.size(); }
};

// ---- offline solution forms -------------------------------------------------

// Inter-update gap variables x_1..x_{N+1} of the equivalent single-hop
// problem: x_1 = t_1 + d, x_i = t_i - t_{i-1} + d, x_{N+1} = T - t_N.
struct InterUpdateVector {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

// Transmission epochs of a two-hop schedule. relay_tx[i] - source_tx[i] >= d,
// deliveries[i] = relay_tx[i] + d_bar.
struct TwoHopSchedule {
    std::vector<double> source_tx; // t_i
    std::vector<double> relay_tx;  // t_bar_i
    std::vector<double> deliveries;

    std::size_t n() const { return source_tx.size(); }
};

// One delivered update as seen by the destination: when its content was
// generated and when it arrived. Age drops to delivery - generation.
struct Update {
    double generation = 0.0;
    double delivery = 0.0;
};

// Piecewise-linear age curve. Breakpoints are (time, age) pairs; between
// consecutive breakpoints the age is linear (slope 1 except at delivery
// drops, which appear as two breakpoints sharing one time).
struct AgeCurve {
    struct Point {
        double time = 0.0;
        double age = 0.0;
    };
    std::vector<Point> points;

    bool empty() const { return points.empty(); }
};

} // namespace aoisched
