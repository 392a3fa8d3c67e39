#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aoisched/age.hpp"
#include "aoisched/oracle.hpp"
#include "aoisched/solver.hpp"
#include "aoisched/transform.hpp"
#include "testutil.hpp"

using namespace aoisched;
using namespace aoisched::testutil;

TEST_CASE("oracle matches the closed form on the worked example") {
    SingleHopInstance reduced{{3, 7, 9, 12, 15}, 3.0, 20.0};
    OracleResult res = oracle_solve(reduced);
    double solver_obj = gap_objective(solve_single_hop(reduced).x);
    CHECK(std::fabs(res.objective - solver_obj) <= 1e-6 * (1.0 + res.objective));
    CHECK(res.max_violation <= 1e-8);
    CHECK(res.rounds > 0);
}

TEST_CASE("unconstrained optimum is the uniform split") {
    OracleResult res = oracle_solve({{0}, 0.0, 2.0});
    CHECK(res.objective == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("objective is invariant under constraint ordering") {
    SingleHopInstance reduced{{3, 7, 9, 12, 15}, 3.0, 20.0};
    std::size_t n_constraints = 2 * reduced.n();
    std::vector<std::size_t> natural(n_constraints);
    std::iota(natural.begin(), natural.end(), 0);

    OracleConfig cfg;
    cfg.constraint_order = natural;
    double base = oracle_solve(reduced, cfg).objective;

    std::reverse(cfg.constraint_order.begin(), cfg.constraint_order.end());
    CHECK(std::fabs(oracle_solve(reduced, cfg).objective - base) <= 1e-8);

    cfg.constraint_order = natural;
    std::rotate(cfg.constraint_order.begin(), cfg.constraint_order.begin() + 3,
                cfg.constraint_order.end());
    CHECK(std::fabs(oracle_solve(reduced, cfg).objective - base) <= 1e-8);

    cfg.constraint_order.pop_back();
    CHECK(thrown_code([&] { oracle_solve(reduced, cfg); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("oracle rejects infeasible instances") {
    CHECK(thrown_code([] { oracle_solve({{5, 6}, 2.0, 7.0}); }) == ErrorCode::InfeasibleInstance);
}

TEST_CASE("oracle agrees with the solver on random instances") {
    auto gen = make_stream(99, 0);
    for (int trial = 0; trial < 150; ++trial) {
        SingleHopInstance inst =
            trial % 3 == 2 ? small_horizon_single_hop(gen, 4) : random_single_hop(gen, 4);
        OracleResult res = oracle_solve(inst);
        double solver_obj = gap_objective(solve_single_hop(inst).x);
        INFO("trial " << trial << " N=" << inst.n() << " d=" << inst.d << " T=" << inst.T);
        CHECK(std::fabs(solver_obj - res.objective) <= 1e-6 * (1.0 + res.objective));
        CHECK(res.max_violation <= 1e-8);
    }
}

TEST_CASE("numeric integration reproduces simple areas") {
    CHECK(numeric_area(age_curve({}, 4.0)) == doctest::Approx(8.0).epsilon(1e-12));

    // One delivery: two trapezoids, 2 - 0.5 + 4.5.
    AgeCurve one = age_curve({{1.0, 2.0}}, 4.0);
    CHECK(numeric_area(one) == doctest::Approx(6.0).epsilon(1e-9));
    // The rule is exact on linear pieces, so a coarse step changes nothing.
    CHECK(numeric_area(one, 10.0) == doctest::Approx(6.0).epsilon(1e-12));

    TwoHopInstance ex1{{2, 6, 7, 11, 13}, {1, 4, 9, 10, 15}, 1.0, 2.0, 19.0};
    TwoHopSolution sol = solve_two_hop(ex1);
    AgeCurve curve = age_curve(updates_of(sol.schedule), ex1.T);
    CHECK(std::fabs(numeric_area(curve) - sol.area) <= 1e-6 * sol.area);
}

TEST_CASE("numeric integration validates its inputs") {
    AgeCurve curve = age_curve({}, 4.0);
    CHECK(thrown_code([&] { numeric_area(curve, 0.0); }) == ErrorCode::InvalidConfig);
    AgeCurve single;
    single.points.push_back({0.0, 0.0});
    CHECK(thrown_code([&] { numeric_area(single); }) == ErrorCode::InvalidSchedule);
    AgeCurve backwards;
    backwards.points.push_back({1.0, 0.0});
    backwards.points.push_back({0.0, 1.0});
    CHECK(thrown_code([&] { numeric_area(backwards); }) == ErrorCode::InvalidSchedule);
}

TEST_CASE("closed-form and numeric areas agree on random schedules") {
    auto gen = make_stream(3, 1);
    for (int trial = 0; trial < 200; ++trial) {
        RandomSchedule s = random_schedule(gen);
        double closed = age_area(s.updates, s.T);
        double numeric = numeric_area(age_curve(s.updates, s.T));
        CHECK(std::fabs(closed - numeric) <= 1e-6 * (1.0 + std::fabs(closed)));
    }
}
