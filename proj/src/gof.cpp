#include "aoisched/gof.hpp"

#include <algorithm>
#include <cmath>

#include "aoisched/error.hpp"

namespace aoisched {
namespace {

// Lower regularized incomplete gamma by its power series; converges fast for
// x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz's continued fraction; for
// x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) raise(ErrorCode::InvalidConfig, "gamma_p needs a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) raise(ErrorCode::InvalidConfig, "gamma_q needs a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_square_sf(double statistic, int df) {
    if (df < 1) raise(ErrorCode::InvalidConfig, "chi-square needs df >= 1");
    return gamma_q(0.5 * df, 0.5 * std::max(0.0, statistic));
}

GofReport geometric_gof(const std::vector<std::int64_t>& run_lengths, double q,
                        double significance, double min_expected) {
    if (!(q > 0.0) || !(q < 1.0)) raise(ErrorCode::InvalidConfig, "need 0 < q < 1");
    GofReport rep;
    rep.q = q;
    rep.significance = significance;
    rep.n_runs = static_cast<std::int64_t>(run_lengths.size());

    const double n = static_cast<double>(rep.n_runs);
    // Bin k holds P(u = k) = (1-q)^{k-1} q; keep binning while both the bin
    // and the remaining tail stay above the expected-count floor.
    std::vector<double> edges_expected;
    double tail_mass = 1.0;
    int k = 1;
    while (true) {
        double mass = std::pow(1.0 - q, static_cast<double>(k - 1)) * q;
        double rest = tail_mass - mass;
        if (n * mass < min_expected || n * rest < min_expected) break;
        edges_expected.push_back(n * mass);
        tail_mass = rest;
        ++k;
    }
    edges_expected.push_back(n * tail_mass); // pooled tail, u >= k
    const std::size_t bins = edges_expected.size();
    if (bins < 2) {
        rep.outcome = GofReport::Outcome::Inconclusive;
        return rep;
    }

    rep.observed.assign(bins, 0);
    rep.expected = edges_expected;
    for (std::int64_t u : run_lengths) {
        if (u < 1) raise(ErrorCode::InvalidConfig, "run lengths start at 1");
        std::size_t bin = std::min<std::size_t>(static_cast<std::size_t>(u - 1), bins - 1);
        ++rep.observed[bin];
    }

    double stat = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        double diff = static_cast<double>(rep.observed[b]) - rep.expected[b];
        stat += diff * diff / rep.expected[b];
    }
    rep.statistic = stat;
    rep.df = static_cast<int>(bins) - 1; // q is fixed by theory, not estimated
    rep.p_value = chi_square_sf(stat, rep.df);
    rep.outcome =
        rep.p_value >= significance ? GofReport::Outcome::Pass : GofReport::Outcome::Reject;
    return rep;
}

GofReport failure_run_test(const OnlineConfig& cfg, std::int64_t min_runs, double significance) {
    if (cfg.policy != Policy::BestEffortWithDumping)
        raise(ErrorCode::InvalidConfig, "failure-run law holds for BestEffortWithDumping only");
    SimBatch batch = run_policy(cfg);
    std::vector<std::int64_t> runs;
    for (const SimResult& r : batch.per_rep)
        runs.insert(runs.end(), r.failure_runs.begin(), r.failure_runs.end());

    double m = std::max(1.0, cfg.d + cfg.d_bar);
    double p = 1.0 - std::exp(-m); // P(a node harvests in one slot)
    if (static_cast<std::int64_t>(runs.size()) < min_runs) {
        GofReport rep;
        rep.q = p * p;
        rep.significance = significance;
        rep.n_runs = static_cast<std::int64_t>(runs.size());
        rep.outcome = GofReport::Outcome::Inconclusive;
        return rep;
    }
    return geometric_gof(runs, p * p, significance);
}

} // namespace aoisched
