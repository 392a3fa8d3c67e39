#include "aoisched/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "aoisched/error.hpp"
#include "aoisched/validate.hpp"

namespace aoisched {
namespace {

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

} // namespace

SingleHopInstance to_single_hop(const TwoHopInstance& inst) {
    TwoHopInstance norm = normalize(inst);
    SingleHopInstance out;
    out.arrivals.reserve(norm.n());
    for (std::size_t i = 0; i < norm.n(); ++i)
        out.arrivals.push_back(std::max(norm.relay_arrivals[i], norm.source_arrivals[i] + norm.d));
    out.d = norm.d + norm.d_bar;
    out.T = norm.T + norm.d;
    return out;
}

TwoHopSchedule x_to_two_hop(const InterUpdateVector& x, const TwoHopInstance& inst) {
    TwoHopInstance norm = normalize(inst);
    const std::size_t n = norm.n();
    if (x.size() != n + 1)
        raise(ErrorCode::InternalInconsistency, "inter-update vector length does not match instance");
    const double dp = norm.d + norm.d_bar; // d' of the reduced problem

    TwoHopSchedule sched;
    sched.relay_tx.resize(n);
    sched.source_tx.resize(n);
    sched.deliveries.resize(n);
    double t_bar = x[0] - dp;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) t_bar += x[i] - dp;
        // Accumulation can land an ulp below the energy floor the gap vector
        // encodes tightly; snap those dips so the times are exactly causal.
        // A genuine violation stays outside tolerance and fails below.
        double floor_i = std::max(norm.relay_arrivals[i], norm.source_arrivals[i] + norm.d);
        if (t_bar < floor_i && geq_tol(t_bar, floor_i)) t_bar = floor_i;
        sched.relay_tx[i] = t_bar;
        sched.source_tx[i] = t_bar - norm.d;
        sched.deliveries[i] = t_bar + norm.d_bar;
    }

    // Post-conditions against the original instance; any failure is a solver bug.
    for (std::size_t i = 0; i < n; ++i) {
        if (!geq_tol(sched.source_tx[i], norm.source_arrivals[i]))
            raise(ErrorCode::InternalInconsistency,
                  fmt("source energy causality broken: t=%.12g < s=%.12g", sched.source_tx[i],
                      norm.source_arrivals[i]));
        if (!geq_tol(sched.relay_tx[i], norm.relay_arrivals[i]))
            raise(ErrorCode::InternalInconsistency,
                  fmt("relay energy causality broken: t_bar=%.12g < s_bar=%.12g", sched.relay_tx[i],
                      norm.relay_arrivals[i]));
        if (!geq_tol(sched.relay_tx[i], sched.source_tx[i] + norm.d))
            raise(ErrorCode::InternalInconsistency,
                  fmt("data causality broken: t_bar=%.12g < t+d=%.12g", sched.relay_tx[i],
                      sched.source_tx[i] + norm.d));
        if (i + 1 < n && !geq_tol(sched.source_tx[i + 1], sched.relay_tx[i] + norm.d_bar))
            raise(ErrorCode::InternalInconsistency,
                  fmt("half-duplex chain broken: t_next=%.12g < t_bar+d_bar=%.12g",
                      sched.source_tx[i + 1], sched.relay_tx[i] + norm.d_bar));
    }
    if (!geq_tol(norm.T, sched.deliveries[n - 1]))
        raise(ErrorCode::InternalInconsistency,
              fmt("deadline broken: last delivery %.12g > T=%.12g", sched.deliveries[n - 1], norm.T));
    return sched;
}

InterUpdateVector schedule_to_x(const TwoHopSchedule& sched, const TwoHopInstance& inst) {
    const std::size_t n = sched.n();
    if (n == 0) raise(ErrorCode::InvalidSchedule, "schedule is empty");
    const double dp = inst.d + inst.d_bar;
    for (std::size_t i = 0; i < n; ++i) {
        if (!nearly_equal(sched.relay_tx[i], sched.source_tx[i] + inst.d))
            raise(ErrorCode::InvalidSchedule,
                  "gap extraction requires tight data causality (t + d = t_bar)");
    }
    InterUpdateVector x;
    x.values.resize(n + 1);
    x.values[0] = sched.relay_tx[0] + dp;
    for (std::size_t i = 1; i < n; ++i)
        x.values[i] = sched.relay_tx[i] - sched.relay_tx[i - 1] + dp;
    x.values[n] = (inst.T + inst.d) - sched.relay_tx[n - 1];
    return x;
}

std::vector<double> x_to_single_hop_tx(const InterUpdateVector& x, double d) {
    if (x.size() < 2) raise(ErrorCode::InvalidInstance, "inter-update vector needs at least two gaps");
    std::vector<double> tx(x.size() - 1);
    double prefix = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        prefix += x[i];
        tx[i] = prefix - static_cast<double>(i + 1) * d;
    }
    return tx;
}

std::vector<std::string> check_inter_update(const InterUpdateVector& x,
                                            const SingleHopInstance& inst) {
    std::vector<std::string> issues;
    const std::size_t n = inst.n();
    if (x.size() != n + 1) {
        issues.push_back("length mismatch");
        return issues;
    }
    double total = 0.0;
    double prefix = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        prefix += x[k];
        total += x[k];
        double bound = inst.arrivals[k] + static_cast<double>(k + 1) * inst.d;
        if (!geq_tol(prefix, bound))
            issues.push_back(fmt("prefix %.12g below energy bound %.12g", prefix, bound) +
                             " at k=" + std::to_string(k + 1));
    }
    total += x[n];
    double expect = inst.T + static_cast<double>(n) * inst.d;
    if (!nearly_equal(total, expect))
        issues.push_back(fmt("gap sum %.12g != T + N d = %.12g", total, expect));
    for (std::size_t i = 1; i < n; ++i)
        if (!geq_tol(x[i], 2.0 * inst.d))
            issues.push_back(fmt("x=%.12g below service floor %.12g", x[i], 2.0 * inst.d) +
                             " at i=" + std::to_string(i + 1));
    if (!geq_tol(x[n], inst.d))
        issues.push_back(fmt("final gap %.12g below service time %.12g", x[n], inst.d));
    return issues;
}

} // namespace aoisched
