#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aoisched/sim.hpp"

namespace aoisched {

// Regularized incomplete gamma functions (series + continued fraction).
double gamma_p(double a, double x); // P(a, x), lower
double gamma_q(double a, double x); // Q(a, x), upper

// Upper-tail probability of a chi-square statistic with df degrees of freedom.
double chi_square_sf(double statistic, int df);

// Chi-square goodness-of-fit of observed counts against a geometric
// distribution on {1, 2, ...} with success probability q. Consecutive run
// lengths are binned individually while the expected count stays >= min_expected
// and the remainder keeps >= min_expected in the pooled tail.
struct GofReport {
    enum class Outcome { Pass, Reject, Inconclusive };

    Outcome outcome = Outcome::Inconclusive;
    std::int64_t n_runs = 0;       // sample size used
    double q = 0.0;                // geometric success probability under H0
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    double significance = 0.01;
    std::vector<std::int64_t> observed; // per bin; last bin is the pooled tail
    std::vector<double> expected;
};

GofReport geometric_gof(const std::vector<std::int64_t>& run_lengths, double q,
                        double significance = 0.01, double min_expected = 5.0);

// Simulates BestEffortWithDumping under cfg, pools the completed failure-run
// lengths across replications, and tests them against the predicted
// Geometric(p^2) law with p = 1 - exp(-max{1, d+d_bar}). Fewer than
// min_runs completed runs yields an Inconclusive report instead of a verdict.
GofReport failure_run_test(const OnlineConfig& cfg, std::int64_t min_runs = 500,
                           double significance = 0.01);

} // namespace aoisched
