#pragma once

#include "ailearn/cost_model.hpp"

#include <string_view>

namespace ailearn {

enum class Regime { Solver, Helper };

std::string_view to_string(Regime r);

/// Utility gap below which the two regimes count as tied; ties go to Helper.
inline constexpr double kRegimeTieTolerance = 1e-12;

struct RegimeSolution {
    double ability = 0.0;
    double utility = 0.0;
};

struct AgentDecision {
    Regime regime = Regime::Helper;
    double ability = 0.0;
    double utility = 0.0;
    /// Mass of problems the student and the AI jointly solve (as perceived by
    /// the student, for misspecified decisions). utility = solvable_mass - cost.
    double solvable_mass = 0.0;
};

/// Benefit slope * a + intercept, so objectives read benefit(a) - c(a, t).
struct LinearBenefit {
    double slope = 1.0;
    double intercept = 0.0;
};

/// Area of the union of [0,a] x [0,1] and [0,d] x [0,p]: a + p * max(d - a, 0).
double solvable_mass(double a, const AiTech& tech);

/// argmax over [lo, hi] of benefit(a) - c(a, t | tech).
RegimeSolution maximize_net_benefit(const LinearBenefit& benefit, double lo, double hi, double t,
                                    const AiTech& tech, const CostFunction& cost);

/// AI as a solver: max over a in [0, d] of (1-p) a + d p - c(a, t).
RegimeSolution solve_solver(double t, const AiTech& tech, const CostFunction& cost);

/// AI as a helper: max over a in [d, 1] of a - c(a, t).
RegimeSolution solve_helper(double t, const AiTech& tech, const CostFunction& cost);

/// Picks the higher-utility regime; Helper on a tie within kRegimeTieTolerance.
AgentDecision select_regime(const RegimeSolution& solver, double solver_mass, const RegimeSolution& helper,
                            double helper_mass);

AgentDecision decide(double t, const AiTech& tech, const CostFunction& cost);

}  // namespace ailearn
