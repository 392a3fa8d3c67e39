#include "aoisched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aoisched/error.hpp"
#include "aoisched/solver.hpp"
#include "aoisched/transform.hpp"
#include "aoisched/validate.hpp"

namespace aoisched {
namespace {

// One inequality constraint in canonical form lhs(x) >= bound.
struct Constraint {
    enum class Kind { Prefix, Floor } kind = Kind::Floor;
    std::size_t index = 0; // prefix length k, or gap index i (0-based)
    double bound = 0.0;
};

struct Penalized {
    double f = 0.0;           // objective + mu * penalty
    double objective = 0.0;   // sum of squares alone
    double max_violation = 0.0;
};

Penalized evaluate(const std::vector<double>& x, const std::vector<Constraint>& constraints,
                   const std::vector<std::size_t>& order, double mu, std::vector<double>* grad) {
    const std::size_t m = x.size();
    Penalized out;
    if (grad) grad->assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        out.objective += x[i] * x[i];
        if (grad) (*grad)[i] = 2.0 * x[i];
    }
    std::vector<double> prefix(m, 0.0);
    double run = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        run += x[i];
        prefix[i] = run;
    }
    double penalty = 0.0;
    for (std::size_t oi : order) {
        const Constraint& c = constraints[oi];
        double lhs = c.kind == Constraint::Kind::Prefix ? prefix[c.index] : x[c.index];
        double viol = c.bound - lhs;
        if (viol <= 0.0) continue;
        penalty += viol * viol;
        out.max_violation = std::max(out.max_violation, viol);
        if (grad) {
            double g = -2.0 * mu * viol;
            if (c.kind == Constraint::Kind::Prefix) {
                for (std::size_t i = 0; i <= c.index; ++i) (*grad)[i] += g;
            } else {
                (*grad)[c.index] += g;
            }
        }
    }
    out.f = out.objective + mu * penalty;
    return out;
}

// Removes the mean so steps stay on the sum-equality hyperplane.
void project_direction(std::vector<double>& g) {
    double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    for (double& v : g) v -= mean;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Hessian-vector product of the penalized objective on its current quadratic
// piece (the active set at x): H = 2 I + sum_{violated c} 2 mu a_c a_c^T.
void hess_vec(const std::vector<double>& x, const std::vector<double>& p,
              const std::vector<Constraint>& constraints, double mu, std::vector<double>* hp) {
    const std::size_t m = x.size();
    hp->assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) (*hp)[i] = 2.0 * p[i];
    std::vector<double> prefix_x(m, 0.0), prefix_p(m, 0.0);
    double rx = 0.0, rp = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        rx += x[i];
        rp += p[i];
        prefix_x[i] = rx;
        prefix_p[i] = rp;
    }
    for (const Constraint& c : constraints) {
        double lhs = c.kind == Constraint::Kind::Prefix ? prefix_x[c.index] : x[c.index];
        if (c.bound - lhs <= 0.0) continue;
        if (c.kind == Constraint::Kind::Prefix) {
            double coef = 2.0 * mu * prefix_p[c.index];
            for (std::size_t i = 0; i <= c.index; ++i) (*hp)[i] += coef;
        } else {
            (*hp)[c.index] += 2.0 * mu * p[c.index];
        }
    }
}

} // namespace

OracleResult oracle_solve(const SingleHopInstance& raw, const OracleConfig& cfg) {
    SingleHopInstance inst = normalize(raw);
    {
        Verdict verdict = validate_single_hop(inst);
        if (!verdict.pass) raise(ErrorCode::InfeasibleInstance, "oracle needs a feasible instance");
    }
    const std::size_t n = inst.n();
    const std::size_t m = n + 1;
    const double target_sum = inst.T + static_cast<double>(n) * inst.d;

    std::vector<Constraint> constraints;
    for (std::size_t k = 0; k < n; ++k)
        constraints.push_back({Constraint::Kind::Prefix, k,
                               inst.arrivals[k] + static_cast<double>(k + 1) * inst.d});
    for (std::size_t i = 1; i < n; ++i)
        constraints.push_back({Constraint::Kind::Floor, i, 2.0 * inst.d});
    constraints.push_back({Constraint::Kind::Floor, n, inst.d});

    std::vector<std::size_t> order = cfg.constraint_order;
    if (order.empty()) {
        order.resize(constraints.size());
        std::iota(order.begin(), order.end(), 0);
    }
    if (order.size() != constraints.size())
        raise(ErrorCode::InvalidConfig, "constraint order must permute all constraints");

    // Feasible warm start from the greedy schedule.
    std::vector<double> tx = greedy_single_hop_tx(inst);
    std::vector<double> x(m, 0.0);
    x[0] = tx[0] + inst.d;
    for (std::size_t i = 1; i < n; ++i) x[i] = tx[i] - tx[i - 1] + inst.d;
    x[n] = inst.T - tx[n - 1];
    { // exact projection onto the hyperplane
        double shift = (target_sum - std::accumulate(x.begin(), x.end(), 0.0)) / static_cast<double>(m);
        for (double& v : x) v += shift;
    }

    OracleResult res;
    std::vector<double> grad, gprev, p, hp, trial;
    for (double mu = cfg.mu0; mu <= cfg.mu_max; mu *= cfg.mu_growth) {
        ++res.rounds;
        // Polak-Ribiere conjugate gradient with exact steps on the current
        // quadratic piece; Armijo backtracking covers active-set crossings.
        bool have_p = false;
        double gnorm2_prev = 0.0;
        int stalled = 0;
        for (int it = 0; it < cfg.max_inner; ++it) {
            Penalized cur = evaluate(x, constraints, order, mu, &grad);
            project_direction(grad);
            double gnorm2 = dot(grad, grad);
            double xnorm = std::sqrt(dot(x, x));
            double stop = cfg.grad_tol * (1.0 + xnorm);
            if (gnorm2 <= stop * stop) break;

            if (!have_p) {
                p.resize(m);
                for (std::size_t i = 0; i < m; ++i) p[i] = -grad[i];
            } else {
                double beta = (gnorm2 - dot(grad, gprev)) / gnorm2_prev;
                if (beta < 0.0) beta = 0.0;
                for (std::size_t i = 0; i < m; ++i) p[i] = -grad[i] + beta * p[i];
                if (dot(p, grad) >= 0.0)
                    for (std::size_t i = 0; i < m; ++i) p[i] = -grad[i];
            }

            hess_vec(x, p, constraints, mu, &hp);
            double gp = dot(grad, p); // < 0 for a descent direction
            double php = dot(p, hp);
            double eta = php > 0.0 ? -gp / php : 1.0;
            bool moved = false;
            double gain = 0.0;
            for (int bt = 0; bt < 60; ++bt) {
                trial.resize(m);
                for (std::size_t i = 0; i < m; ++i) trial[i] = x[i] + eta * p[i];
                Penalized t = evaluate(trial, constraints, order, mu, nullptr);
                if (t.f <= cur.f + 1e-4 * eta * gp) {
                    gain = cur.f - t.f;
                    x.swap(trial);
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            ++res.iterations;
            if (!moved) break; // stationary up to float noise for this mu
            // Progress below float resolution a few times in a row: done.
            stalled = gain <= 1e-14 * (1.0 + std::fabs(cur.f)) ? stalled + 1 : 0;
            if (stalled >= 3) break;
            gprev = grad;
            gnorm2_prev = gnorm2;
            have_p = true;
            if ((it + 1) % static_cast<int>(8 * m) == 0) have_p = false; // periodic restart
        }
    }

    Penalized fin = evaluate(x, constraints, order, /*mu=*/1.0, nullptr);
    res.x.values = x;
    res.objective = fin.objective;
    res.max_violation = fin.max_violation;
    if (res.max_violation > 1e-8)
        raise(ErrorCode::InternalInconsistency, "oracle left a constraint violated beyond 1e-8");
    return res;
}

double numeric_area(const AgeCurve& curve, double step) {
    if (curve.points.size() < 2) raise(ErrorCode::InvalidSchedule, "age curve needs two breakpoints");
    if (!(step > 0.0)) raise(ErrorCode::InvalidConfig, "step must be positive");
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        if (b.time < a.time) raise(ErrorCode::InvalidSchedule, "age curve times must be sorted");
        double span = b.time - a.time;
        if (span == 0.0) continue; // delivery drop: zero-width
        auto pieces = static_cast<std::size_t>(std::ceil(span / step));
        pieces = std::max<std::size_t>(pieces, 1);
        double h = span / static_cast<double>(pieces);
        double prev = a.age;
        for (std::size_t p = 1; p <= pieces; ++p) {
            double t = (p == pieces) ? b.time : a.time + h * static_cast<double>(p);
            double w = (t - a.time) / span;
            double val = a.age + w * (b.age - a.age);
            area += 0.5 * (prev + val) * (t - (a.time + h * static_cast<double>(p - 1)));
            prev = val;
        }
    }
    return area;
}

} // namespace aoisched
