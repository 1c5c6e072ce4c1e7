#include "ailearn/policy.hpp"

#include "ailearn/errors.hpp"

#include <sstream>

namespace ailearn {

namespace {

LinearBenefit perceived_solver_benefit(const AiTech& tech, const Belief& belief) {
    // lambda [(1-p') a + d p'] + (1-lambda) a = (1 - lambda p') a + lambda d p'
    return {1.0 - belief.lambda * belief.p_prime, belief.lambda * tech.d * belief.p_prime};
}

double perceived_mass(double a, const AiTech& tech, const Belief& belief) {
    const LinearBenefit b = perceived_solver_benefit(tech, belief);
    return b.slope * a + b.intercept;
}

}  // namespace

void Belief::validate(const AiTech& tech) const {
    tech.validate();
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        std::ostringstream msg;
        msg << "policy.lambda must lie in [0,1], got " << lambda;
        throw InputError(msg.str());
    }
    if (!(p_prime >= tech.p && p_prime <= 1.0)) {
        std::ostringstream msg;
        msg << "policy.p_prime must lie in [p, 1] = [" << tech.p << ", 1], got " << p_prime;
        throw InputError(msg.str());
    }
}

MisspecifiedSolution solve_misspecified(double t, const AiTech& tech, const CostFunction& cost,
                                        const Belief& belief) {
    belief.validate(tech);
    const RegimeSolution sol =
        maximize_net_benefit(perceived_solver_benefit(tech, belief), 0.0, tech.d, t, tech, cost);
    const double lambda = belief.lambda;
    const double true_mass =
        lambda * ((1.0 - tech.p) * sol.ability + tech.d * tech.p) + (1.0 - lambda) * sol.ability;
    return {sol.ability, sol.utility, true_mass};
}

double optimal_lambda(double p, double p_prime) {
    if (!(p_prime > 0.0 && p_prime <= 1.0)) throw InputError("optimal_lambda: p_prime must lie in (0,1]");
    if (!(p >= 0.0 && p <= p_prime)) throw InputError("optimal_lambda: p must lie in [0, p_prime]");
    return p / p_prime;
}

AgentDecision misspecified_decision(double t, const AiTech& tech, const CostFunction& cost, const Belief& belief) {
    const MisspecifiedSolution solver = solve_misspecified(t, tech, cost, belief);
    const RegimeSolution helper = solve_helper(t, tech, cost);
    return select_regime({solver.ability, solver.perceived_utility}, perceived_mass(solver.ability, tech, belief),
                         helper, solvable_mass(helper.ability, tech));
}

ThresholdResult misspecified_threshold(const AiTech& tech, const CostFunction& cost, const Belief& belief,
                                       const ThresholdOptions& options) {
    belief.validate(tech);
    RegimeProblem problem{
        [&](double t) {
            const MisspecifiedSolution s = solve_misspecified(t, tech, cost, belief);
            return RegimeSolution{s.ability, s.perceived_utility};
        },
        [&](double t) { return solve_helper(t, tech, cost); },
    };
    return find_threshold(problem, options);
}

PolicyResult evaluate_policy(double t, const AiTech& tech, const CostFunction& cost, const Belief& belief) {
    PolicyResult r;
    r.lambda = belief.lambda;
    r.p_prime = belief.p_prime;
    r.a_misspecified = solve_misspecified(t, tech, cost, belief).ability;
    r.a_true_optimal = solve_solver(t, tech, cost).ability;
    r.gap = r.a_true_optimal - r.a_misspecified;
    r.lambda_star = optimal_lambda(tech.p, belief.p_prime);
    return r;
}

std::vector<GapRow> investment_gap_profile(const AiTech& tech, const CostFunction& cost, const Belief& belief,
                                           int grid_n) {
    if (grid_n < 2) throw InputError("investment_gap_profile: grid_n must be >= 2");
    belief.validate(tech);
    std::vector<GapRow> rows;
    rows.reserve(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double t = static_cast<double>(i) / (grid_n - 1);
        GapRow row;
        row.t = t;
        row.a_misspecified = solve_misspecified(t, tech, cost, belief).ability;
        row.a_true = solve_solver(t, tech, cost).ability;
        row.gap = row.a_true - row.a_misspecified;
        row.regime = misspecified_decision(t, tech, cost, belief).regime;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ailearn
