#include "ailearn/agent.hpp"

#include "ailearn/errors.hpp"
#include "ailearn/numerics.hpp"

#include <algorithm>
#include <string>

namespace ailearn {

namespace {

void check_type(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("type t must lie in [0,1], got " + std::to_string(t));
}

}  // namespace

std::string_view to_string(Regime r) { return r == Regime::Solver ? "Solver" : "Helper"; }

double solvable_mass(double a, const AiTech& tech) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("ability a must lie in [0,1], got " + std::to_string(a));
    tech.validate();
    return a + tech.p * std::max(tech.d - a, 0.0);
}

RegimeSolution maximize_net_benefit(const LinearBenefit& benefit, double lo, double hi, double t,
                                    const AiTech& tech, const CostFunction& cost) {
    check_type(t);
    ScalarObjective objective{
        [&](double a) { return benefit.slope * a + benefit.intercept - cost.cost(a, t, tech); },
        [&](double a) { return benefit.slope - cost.partial(a, t, tech, Variable::Ability); },
    };
    const Maximum best = maximize_bounded(objective, lo, hi);
    return {best.argmax, best.value};
}

RegimeSolution solve_solver(double t, const AiTech& tech, const CostFunction& cost) {
    tech.validate();
    return maximize_net_benefit({1.0 - tech.p, tech.d * tech.p}, 0.0, tech.d, t, tech, cost);
}

RegimeSolution solve_helper(double t, const AiTech& tech, const CostFunction& cost) {
    tech.validate();
    return maximize_net_benefit({1.0, 0.0}, tech.d, 1.0, t, tech, cost);
}

AgentDecision select_regime(const RegimeSolution& solver, double solver_mass, const RegimeSolution& helper,
                            double helper_mass) {
    if (solver.utility > helper.utility + kRegimeTieTolerance)
        return {Regime::Solver, solver.ability, solver.utility, solver_mass};
    return {Regime::Helper, helper.ability, helper.utility, helper_mass};
}

AgentDecision decide(double t, const AiTech& tech, const CostFunction& cost) {
    const RegimeSolution solver = solve_solver(t, tech, cost);
    const RegimeSolution helper = solve_helper(t, tech, cost);
    return select_regime(solver, solvable_mass(solver.ability, tech), helper,
                         solvable_mass(helper.ability, tech));
}

}  // namespace ailearn
