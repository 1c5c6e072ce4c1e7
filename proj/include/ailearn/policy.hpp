#pragma once

#include "ailearn/agent.hpp"
#include "ailearn/cost_model.hpp"
#include "ailearn/equilibrium.hpp"

#include <vector>

namespace ailearn {

/// Students believe the AI is right with probability `p_prime` >= p; the
/// instructor puts weight `lambda` on assignments where AI is permitted.
struct Belief {
    double p_prime = 0.0;
    double lambda = 1.0;

    void validate(const AiTech& tech) const;
};

struct MisspecifiedSolution {
    double ability = 0.0;
    double perceived_utility = 0.0;
    /// lambda [(1-p) a + d p] + (1-lambda) a at the chosen ability.
    double true_expected_mass = 0.0;
};

/// max over a in [0, d] of lambda [(1-p') a + d p'] + (1-lambda) a - c(a, t).
MisspecifiedSolution solve_misspecified(double t, const AiTech& tech, const CostFunction& cost, const Belief& belief);

/// p / p'. InputError when p' = 0 or p > p'.
double optimal_lambda(double p, double p_prime);

/// Regime choice under perceived utilities; helper utility does not depend on
/// beliefs. Same tie-break as `decide`.
AgentDecision misspecified_decision(double t, const AiTech& tech, const CostFunction& cost, const Belief& belief);

/// Threshold of the misspecified decision rule.
ThresholdResult misspecified_threshold(const AiTech& tech, const CostFunction& cost, const Belief& belief,
                                       const ThresholdOptions& options = {});

struct PolicyResult {
    double lambda = 0.0;
    double p_prime = 0.0;
    double a_misspecified = 0.0;
    /// Solver-regime ability under correct beliefs and full AI access.
    double a_true_optimal = 0.0;
    double gap = 0.0;  // a_true_optimal - a_misspecified, signed
    double lambda_star = 0.0;
};

PolicyResult evaluate_policy(double t, const AiTech& tech, const CostFunction& cost, const Belief& belief);

struct GapRow {
    double t = 0.0;
    double a_misspecified = 0.0;
    double a_true = 0.0;
    double gap = 0.0;
    Regime regime = Regime::Solver;  // misspecified regime choice at t
};

/// Solver-regime investment gap on a uniform type grid over [0, 1].
std::vector<GapRow> investment_gap_profile(const AiTech& tech, const CostFunction& cost, const Belief& belief,
                                           int grid_n);

}  // namespace ailearn
