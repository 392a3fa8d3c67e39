#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aoisched/age.hpp"
#include "aoisched/solver.hpp"
#include "aoisched/transform.hpp"
#include "aoisched/types.hpp"
#include "testutil.hpp"

using namespace aoisched;
using namespace aoisched::testutil;

namespace {

TwoHopInstance example1() {
    return {{2, 6, 7, 11, 13}, {1, 4, 9, 10, 15}, 1.0, 2.0, 19.0};
}

TwoHopInstance example2(double T) {
    return {{0, 4, 4, 9, 13}, {1, 3, 6, 10, 12}, 1.0, 2.0, T};
}

void check_vector(const InterUpdateVector& got, const std::vector<double>& want,
                  double tol = 1e-9) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(std::fabs(got[i] - want[i]) <= tol);
}

} // namespace

TEST_CASE("example 1: balancing, amendment at n0=3") {
    TwoHopSolution sol = solve_two_hop(example1());
    CHECK(sol.trace.branch == Branch::AmendedAtN0);
    REQUIRE(sol.trace.n0.has_value());
    CHECK(*sol.trace.n0 == 3);
    check_vector(sol.trace.x_e, {6.5, 6.5, 17.0 / 3.0, 17.0 / 3.0, 17.0 / 3.0, 5.0});
    check_vector(sol.trace.x_star, {6.5, 6.5, 6.0, 6.0, 6.0, 4.0});
    CHECK(sol.area == doctest::Approx(75.75).epsilon(1e-12));

    CHECK(sol.schedule.source_tx == std::vector<double>{2.5, 6, 9, 12, 15});
    CHECK(sol.schedule.relay_tx == std::vector<double>{3.5, 7, 10, 13, 16});
    CHECK(sol.schedule.deliveries == std::vector<double>{5.5, 9, 12, 15, 18});

    REQUIRE(sol.trace.runs.size() == 3);
    CHECK(sol.trace.runs[0].chosen == 2);
    CHECK(sol.trace.runs[0].value == doctest::Approx(6.5));
    CHECK(sol.trace.runs[0].candidates.size() == 6);
    CHECK(sol.trace.runs[0].candidates[1].second == doctest::Approx(3.5));
    CHECK(sol.trace.runs[1].chosen == 5);
    CHECK(sol.trace.runs[1].value == doctest::Approx(17.0 / 3.0));
    CHECK(sol.trace.runs[2].chosen == 6);
    CHECK(sol.trace.runs[2].value == doctest::Approx(5.0));

    REQUIRE(sol.trace.segments.size() == 3);
    CHECK(sol.trace.segments[0].start == 1);
    CHECK(sol.trace.segments[0].end == 2);
    CHECK(sol.trace.segments[1].start == 3);
    CHECK(sol.trace.segments[1].end == 5);
    CHECK(sol.trace.segments[2].start == 6);
    CHECK(sol.trace.segments[2].end == 6);
}

TEST_CASE("example 2 at T=16: tight-horizon closed form") {
    TwoHopSolution sol = solve_two_hop(example2(16.0));
    CHECK(sol.trace.branch == Branch::SmallHorizon);
    CHECK_FALSE(sol.trace.n0.has_value());
    CHECK(sol.trace.x_e.size() == 0);
    CHECK(sol.trace.runs.empty());
    check_vector(sol.trace.x_star, {5, 6, 6, 6, 6, 3});
    CHECK(sol.area == doctest::Approx(62.0).epsilon(1e-12));
    CHECK(sol.reduced.arrivals == std::vector<double>{1, 5, 6, 10, 14});
    CHECK(sol.reduced.d == doctest::Approx(3.0));
    CHECK(sol.reduced.T == doctest::Approx(17.0));
    CHECK(sol.schedule.deliveries == std::vector<double>{4, 7, 10, 13, 16});
}

TEST_CASE("example 2 at T=18: n0=2 falls back to the closed form") {
    TwoHopSolution sol = solve_two_hop(example2(18.0));
    CHECK(sol.trace.branch == Branch::AmendedViaSmallHorizonBranch);
    REQUIRE(sol.trace.n0.has_value());
    CHECK(*sol.trace.n0 == 2);
    check_vector(sol.trace.x_e, {5.8, 5.8, 5.8, 5.8, 5.8, 5.0});
    check_vector(sol.trace.x_star, {5, 6, 6, 6, 6, 5});
    CHECK(sol.area == doctest::Approx(70.0).epsilon(1e-12));
}

TEST_CASE("balancing illustration: two runs, tail forced by the sum") {
    SingleHopInstance inst{{3, 10, 12}, 4.0, 20.0};
    SingleHopSolution sol = solve_single_hop(inst);
    check_vector(sol.trace.x_e, {9, 9, 7, 7});
    check_vector(sol.trace.x_star, {9, 9, 8, 6});
    CHECK(sol.trace.branch == Branch::AmendedAtN0);
    CHECK(*sol.trace.n0 == 3);
    CHECK(sol.tx == std::vector<double>{5, 10, 14});
    CHECK(sol.area == doctest::Approx(107.0).epsilon(1e-12));

    REQUIRE(sol.trace.runs.size() == 2);
    CHECK(sol.trace.runs[0].chosen == 2);
    CHECK(sol.trace.runs[0].value == doctest::Approx(9.0));
    CHECK(sol.trace.runs[1].chosen == 4);
    CHECK(sol.trace.runs[1].value == doctest::Approx(7.0));
}

TEST_CASE("small-horizon closed form") {
    // Reduced form of example 2 at T=16.
    check_vector(solve_small_horizon({{1, 5, 6, 10, 14}, 3.0, 17.0}), {5, 6, 6, 6, 6, 3});
    // Tightest possible horizon at N=1.
    check_vector(solve_small_horizon({{0}, 1.0, 1.0}), {1, 1});

    CHECK(thrown_code([] { solve_small_horizon({{0}, 1.0, 2.0}); }) == ErrorCode::WrongBranch);
    CHECK(thrown_code([] { solve_small_horizon({{5}, 1.0, 1.5}); }) ==
          ErrorCode::InfeasibleInstance);
}

TEST_CASE("boundary T = (N+1)d balances") {
    SingleHopInstance inst{{0, 0}, 1.0, 3.0};
    SingleHopSolution sol = solve_single_hop(inst);
    CHECK(sol.trace.branch == Branch::AmendedViaSmallHorizonBranch);
    check_vector(sol.x, {1.5, 2.0, 1.5});
}

TEST_CASE("degenerate N=1 balancing") {
    SingleHopSolution sol = solve_single_hop({{0}, 0.0, 2.0});
    CHECK(sol.trace.branch == Branch::BalancedFeasible);
    check_vector(sol.x, {1, 1});
    CHECK(sol.area == doctest::Approx(1.0));
    CHECK(gap_objective(sol.x) == doctest::Approx(2.0));
}

TEST_CASE("amendment branches directly") {
    // Keep branch with n0 = 2: x_1 pinned at s_1 + d.
    SingleHopInstance inst{{5, 5.2}, 1.0, 7.0};
    SolveTrace trace;
    InterUpdateVector amended = amend(InterUpdateVector{{6.0, 1.5, 1.5}}, inst, &trace);
    CHECK(trace.branch == Branch::AmendedAtN0);
    CHECK(*trace.n0 == 2);
    check_vector(amended, {6, 2, 1});

    // Identity case.
    SolveTrace trace2;
    InterUpdateVector kept = amend(InterUpdateVector{{6.0, 2.0, 1.0}}, inst, &trace2);
    CHECK(trace2.branch == Branch::BalancedFeasible);
    check_vector(kept, {6, 2, 1});

    // A violation only at the final gap cannot come from balancing for N >= 2.
    SingleHopInstance wide{{0, 0}, 1.0, 6.1};
    CHECK(thrown_code([&] { amend(InterUpdateVector{{5.0, 5.0, 0.1}}, wide); }) ==
          ErrorCode::InternalInconsistency);
    CHECK(thrown_code([&] { amend(InterUpdateVector{{5.0, 5.0}}, wide); }) ==
          ErrorCode::InternalInconsistency);
}

TEST_CASE("infeasible instances are rejected with the violated conditions") {
    auto code = thrown_code([] { solve_two_hop({{0, 0}, {5, 5}, 1.0, 1.0, 7.5}); });
    CHECK(code == ErrorCode::InfeasibleInstance);
    try {
        solve_two_hop(example2(10.0));
    } catch (const AoiError& e) {
        CHECK(e.code() == ErrorCode::InfeasibleInstance);
        CHECK(std::string(e.what()).find("needs T>=") != std::string::npos);
    }
    CHECK(thrown_code([] { solve_single_hop({{5, 6}, 2.0, 7.0}); }) ==
          ErrorCode::InfeasibleInstance);
}

TEST_CASE("offline greedy baselines") {
    GreedyResult g1 = greedy_two_hop(example1());
    CHECK(g1.within_deadline);
    CHECK(g1.schedule.source_tx == std::vector<double>{2, 6, 9, 12, 15});
    CHECK(g1.schedule.relay_tx == std::vector<double>{3, 7, 10, 13, 16});
    CHECK(g1.area == doctest::Approx(76.5).epsilon(1e-12));

    GreedyResult g2 = greedy_two_hop(example2(16.0));
    CHECK(g2.within_deadline);
    CHECK(g2.schedule.source_tx == std::vector<double>{0, 4, 7, 10, 13});
    CHECK(g2.schedule.relay_tx == std::vector<double>{1, 5, 8, 11, 14});
    CHECK(g2.area == doctest::Approx(65.0).epsilon(1e-12));

    GreedyResult g3 = greedy_two_hop(example2(18.0));
    CHECK(g3.area == doctest::Approx(73.0).epsilon(1e-12));

    // The baseline never beats the optimum on the worked examples.
    CHECK(solve_two_hop(example1()).area <= g1.area);
    CHECK(solve_two_hop(example2(16.0)).area <= g2.area);

    // An instance greedy cannot finish in time is infeasible outright.
    GreedyResult late = greedy_two_hop({{0, 0}, {5, 5}, 1.0, 1.0, 7.5});
    CHECK_FALSE(late.within_deadline);
    CHECK(late.schedule.deliveries.back() == doctest::Approx(8.0));
}

TEST_CASE("trivial two-hop instance with a unique feasible point") {
    TwoHopSolution sol = solve_two_hop({{0}, {0}, 1.0, 1.0, 2.0});
    CHECK(sol.schedule.source_tx == std::vector<double>{0});
    CHECK(sol.schedule.relay_tx == std::vector<double>{1});
    CHECK(sol.schedule.deliveries == std::vector<double>{2});
}

TEST_CASE("necessary conditions hold on randomized single-hop instances") {
    auto gen = make_stream(2024, 0);
    int corollary_applications = 0;
    for (int trial = 0; trial < 600; ++trial) {
        SingleHopInstance inst = trial % 3 == 2   ? small_horizon_single_hop(gen)
                                 : trial % 3 == 1 ? concave_single_hop(gen)
                                                  : random_single_hop(gen);
        SingleHopSolution sol = solve_single_hop(inst);
        INFO("trial " << trial << " branch " << branch_name(sol.trace.branch));
        CHECK(check_inter_update_lemmas(sol.x, inst) == "");
        CHECK(check_inter_update(sol.x, normalize(inst)).empty());

        // Trace invariant: the clamp branch starts past 2 unless x_1 is pinned.
        if (sol.trace.branch == Branch::AmendedAtN0) {
            REQUIRE(sol.trace.n0.has_value());
            std::size_t n0 = *sol.trace.n0;
            CHECK(n0 <= inst.n());
            if (n0 == 2) CHECK(nearly_equal(sol.trace.x_e[0], inst.arrivals[0] + inst.d));
            else CHECK(n0 > 2);
        }

        if (sol.trace.branch == Branch::SmallHorizon) continue;
        std::vector<BalanceSegment> segments;
        InterUpdateVector x_e = inter_update_balancing(inst, &segments);
        CHECK(check_balancing_lemmas(x_e, segments, inst) == "");

        // Restriction corollary: truncating at a tight segment end reproduces
        // the head of the balancing output.
        for (const BalanceSegment& seg : segments) {
            std::size_t j = seg.end;
            if (j < 2 || j > inst.n()) continue;
            SingleHopInstance sub;
            sub.d = inst.d;
            sub.T = inst.arrivals[j - 1] + inst.d;
            sub.arrivals.assign(inst.arrivals.begin(), inst.arrivals.begin() + (j - 1));
            if (!geq_tol(sub.T, static_cast<double>(j) * sub.d)) continue;
            if (!validate_single_hop(sub).pass) continue;
            InterUpdateVector head = inter_update_balancing(sub);
            REQUIRE(head.size() == j);
            for (std::size_t i = 0; i < j; ++i)
                CHECK(std::fabs(head[i] - x_e[i]) <= 1e-9 * (1.0 + std::fabs(x_e[i])));
            ++corollary_applications;
        }
    }
    CHECK(corollary_applications > 100);
}

TEST_CASE("optimality dominance and lemma checks on randomized two-hop instances") {
    auto gen = make_stream(77, 1);
    int small_horizon_hits = 0;
    for (int trial = 0; trial < 300; ++trial) {
        TwoHopInstance inst = trial % 3 == 2 ? small_horizon_two_hop(gen) : random_two_hop(gen);
        TwoHopSolution sol = solve_two_hop(inst);
        GreedyResult greedy = greedy_two_hop(inst);
        INFO("trial " << trial);
        REQUIRE(greedy.within_deadline);
        CHECK(sol.area <= greedy.area + tol_at(greedy.area));
        CHECK(check_inter_update_lemmas(sol.trace.x_star, sol.reduced) == "");
        if (sol.trace.branch == Branch::SmallHorizon) ++small_horizon_hits;

        // Combined-node principle: the relay forwards the moment it receives.
        for (std::size_t i = 0; i < sol.schedule.n(); ++i)
            CHECK(sol.schedule.relay_tx[i] ==
                  doctest::Approx(sol.schedule.source_tx[i] + inst.d).epsilon(1e-12));
    }
    CHECK(small_horizon_hits > 50);
}

TEST_CASE("single-hop greedy epochs respect arrivals and spacing") {
    SingleHopInstance inst{{3, 10, 12}, 4.0, 20.0};
    std::vector<double> tx = greedy_single_hop_tx(inst);
    CHECK(tx == std::vector<double>{3, 10, 14});

    auto gen = make_stream(5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        SingleHopInstance rnd = random_single_hop(gen);
        std::vector<double> epochs = greedy_single_hop_tx(rnd);
        for (std::size_t i = 0; i < epochs.size(); ++i) {
            CHECK(epochs[i] >= rnd.arrivals[i]);
            if (i > 0) CHECK(epochs[i] >= epochs[i - 1] + rnd.d - 1e-12);
        }
        CHECK(epochs.back() + rnd.d <= rnd.T + tol_at(rnd.T));
        double greedy_area = age_area(updates_of_single_hop(epochs, rnd.d), rnd.T);
        CHECK(solve_single_hop(rnd).area <= greedy_area + tol_at(greedy_area));
    }
}
