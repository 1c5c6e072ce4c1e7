#pragma once

#include "ailearn/agent.hpp"
#include "ailearn/cost_model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ailearn {

enum class Boundary { Interior, AllSolver, AllHelper };

std::string_view to_string(Boundary b);

struct ThresholdResult {
    double threshold = 0.0;
    double solver_ability = 0.0;  // a^s(T)
    double helper_ability = 0.0;  // a^h(T)
    double gap = 0.0;             // a^h(T) - a^s(T)
    double indifference_residual = 0.0;
    Boundary boundary = Boundary::Interior;
    /// Whether U^h - U^s was nondecreasing on the verification grid; if not,
    /// `monotonicity_witness` holds the first t where it fell.
    bool gap_function_monotone = true;
    std::optional<double> monotonicity_witness;
};

struct AbilityPoint {
    double t = 0.0;
    AgentDecision decision;
};

/// A(t) on a uniform type grid over [0, 1], sorted by t.
struct AbilityMap {
    std::vector<AbilityPoint> points;
};

AbilityMap ability_map(const AiTech& tech, const CostFunction& cost, int grid_n, std::size_t workers = 1);

/// The two regime problems as functions of type. Lets the threshold search run
/// on any decision rule of the solver/helper shape (e.g. misspecified beliefs).
struct RegimeProblem {
    std::function<RegimeSolution(double t)> solver;
    std::function<RegimeSolution(double t)> helper;
};

RegimeProblem regime_problem(const AiTech& tech, const CostFunction& cost);

struct ThresholdOptions {
    double tol = 1e-10;
    int verification_points = 256;
    /// Allowed decrease of U^h - U^s between neighbouring grid points.
    double monotone_slack = 1e-12;
};

/// Threshold type T solving U^h(T) = U^s(T) by bisection on
/// g(t) = U^h(t) - U^s(t). Boundary states when g keeps one sign on [0,1].
/// Throws VerificationError (carrying the (t, g) grid) if g changes sign more
/// than once on the verification grid.
ThresholdResult find_threshold(const RegimeProblem& problem, const ThresholdOptions& options = {});
ThresholdResult find_threshold(const AiTech& tech, const CostFunction& cost, const ThresholdOptions& options = {});

struct PropositionReport {
    bool monotone = false;           // A(t) weakly increasing on the grid
    bool indifferent_at_T = false;   // |U^h(T) - U^s(T)| <= tol
    bool bracketed = false;          // a^s(T) <= d <= a^h(T)
    bool gap_positive = false;       // a^h(T) - a^s(T) > tol
    bool foc_contradiction_check = false;  // no continuous crossing at the kink d
    bool gap_function_monotone = false;
    ThresholdResult threshold;
    std::vector<std::string> failures;

    bool all_passed() const {
        return monotone && indifferent_at_T && bracketed && gap_positive && foc_contradiction_check &&
               gap_function_monotone;
    }
};

/// Checks the threshold structure of the equilibrium. Requires an Interior
/// threshold (InputError otherwise).
PropositionReport verify_proposition(const AiTech& tech, const CostFunction& cost, int grid_n = 101,
                                     double tol = 1e-8);

}  // namespace ailearn
