#pragma once

#include <cstddef>
#include <vector>

#include "aoisched/types.hpp"

namespace aoisched {

// Reference minimizer configuration. The oracle solves the same constrained
// problem as the closed-form solver but by a generic method: quadratic
// penalty on the inequality constraints, exact projection onto the
// sum-equality hyperplane, gradient descent with Armijo backtracking.
struct OracleConfig {
    double mu0 = 1e2;          // initial penalty weight
    double mu_max = 1e12;      // final penalty weight
    double mu_growth = 10.0;   // multiplicative schedule
    double grad_tol = 1e-11;   // inner stop: projected-gradient norm scale
    int max_inner = 5000;      // inner iteration cap per penalty round
    // Evaluation order of the inequality constraints; empty means natural
    // order. The optimum must not depend on it (order-invariance property).
    std::vector<std::size_t> constraint_order;
};

struct OracleResult {
    InterUpdateVector x;
    double objective = 0.0;     // sum of squared gaps at x
    double max_violation = 0.0; // worst remaining constraint violation
    int rounds = 0;             // penalty rounds taken
    long iterations = 0;        // total gradient steps
};

// Minimizes sum x_i^2 subject to the reduced problem's constraints, started
// from the (feasible) greedy schedule. Algorithm-independent of the
// closed-form solver on purpose: it is the cross-check. Requires a feasible
// instance; output satisfies every constraint with slack >= -1e-8.
OracleResult oracle_solve(const SingleHopInstance& inst, const OracleConfig& cfg = {});

// Trapezoidal integration of a piecewise-linear age curve. The partition is
// the union of a uniform grid of width `step` and the curve's breakpoints,
// so the rule is exact on every linear piece; `step` only adds redundant
// sample points. Independent route to the closed-form area.
double numeric_area(const AgeCurve& curve, double step = 1e-4);

} // namespace aoisched
