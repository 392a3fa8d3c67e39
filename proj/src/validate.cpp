#include "aoisched/validate.hpp"

#include <algorithm>
#include <cmath>

#include "aoisched/error.hpp"

namespace aoisched {
namespace {

bool sort_arrivals(std::vector<double>& arrivals) {
    bool was_sorted = std::is_sorted(arrivals.begin(), arrivals.end());
    if (!was_sorted) std::sort(arrivals.begin(), arrivals.end());
    return !was_sorted;
}

void check_times(const std::vector<double>& arrivals, double T, const char* label) {
    if (arrivals.empty()) raise(ErrorCode::InvalidInstance, std::string(label) + " arrival list is empty");
    for (double s : arrivals) {
        if (!std::isfinite(s) || s < 0.0)
            raise(ErrorCode::InvalidInstance, std::string(label) + " arrivals must be finite and non-negative");
    }
    if (!std::isfinite(T) || T <= 0.0) raise(ErrorCode::InvalidInstance, "deadline T must be positive");
}

void check_service(double d, const char* label) {
    if (!std::isfinite(d) || d < 0.0)
        raise(ErrorCode::InvalidInstance, std::string(label) + " must be finite and non-negative");
}

} // namespace

SingleHopInstance normalize(const SingleHopInstance& inst, Verdict* verdict) {
    SingleHopInstance out = inst;
    check_times(out.arrivals, out.T, "source");
    check_service(out.d, "service time d");
    bool warned = sort_arrivals(out.arrivals);
    if (verdict) verdict->sorted_warning = verdict->sorted_warning || warned;
    return out;
}

TwoHopInstance normalize(const TwoHopInstance& inst, Verdict* verdict) {
    TwoHopInstance out = inst;
    // Unequal list lengths: keep the prefix both nodes can power.
    std::size_t n = std::min(out.source_arrivals.size(), out.relay_arrivals.size());
    bool truncated = n != out.source_arrivals.size() || n != out.relay_arrivals.size();
    out.source_arrivals.resize(n);
    out.relay_arrivals.resize(n);
    check_times(out.source_arrivals, out.T, "source");
    check_times(out.relay_arrivals, out.T, "relay");
    check_service(out.d, "service time d");
    check_service(out.d_bar, "service time d_bar");
    bool warned = sort_arrivals(out.source_arrivals);
    warned = sort_arrivals(out.relay_arrivals) || warned;
    if (verdict) {
        verdict->sorted_warning = verdict->sorted_warning || warned;
        verdict->truncated_warning = verdict->truncated_warning || truncated;
    }
    return out;
}

Verdict validate_single_hop(const SingleHopInstance& inst) {
    Verdict verdict;
    SingleHopInstance norm = normalize(inst, &verdict);
    const std::size_t n = norm.n();
    for (std::size_t i = 1; i <= n; ++i) {
        double required = norm.arrivals[i - 1] + static_cast<double>(n - i + 1) * norm.d;
        if (!geq_tol(norm.T, required))
            verdict.violations.push_back({i, "source_deadline", required});
    }
    verdict.pass = verdict.violations.empty();
    return verdict;
}

Verdict validate_two_hop(const TwoHopInstance& inst) {
    Verdict verdict;
    TwoHopInstance norm = normalize(inst, &verdict);
    const std::size_t n = norm.n();
    const double dd = norm.d + norm.d_bar;
    for (std::size_t i = 1; i <= n; ++i) {
        const double remaining = static_cast<double>(n - i + 1);
        const double s = norm.source_arrivals[i - 1];
        const double s_bar = norm.relay_arrivals[i - 1];

        double relay_req = s_bar + remaining * norm.d_bar;
        if (!geq_tol(norm.T, relay_req))
            verdict.violations.push_back({i, "relay_deadline", relay_req});

        double source_req = s + remaining * dd;
        if (!geq_tol(norm.T, source_req))
            verdict.violations.push_back({i, "source_deadline", source_req});

        // Feasibility of the combined node: updates i..N must fit behind the
        // relay's readiness as well, not just behind its own arrivals.
        double combined_req = std::max(s_bar, s + norm.d) + remaining * dd - norm.d;
        if (!geq_tol(norm.T, combined_req) && geq_tol(norm.T, relay_req) && geq_tol(norm.T, source_req))
            verdict.violations.push_back({i, "combined_deadline", combined_req});
    }
    verdict.pass = verdict.violations.empty();
    return verdict;
}

} // namespace aoisched
