#include "ailearn/equilibrium.hpp"

#include "ailearn/errors.hpp"
#include "ailearn/numerics.hpp"

#include <cmath>
#include <sstream>

namespace ailearn {

std::string_view to_string(Boundary b) {
    switch (b) {
        case Boundary::Interior: return "Interior";
        case Boundary::AllSolver: return "AllSolver";
        case Boundary::AllHelper: return "AllHelper";
    }
    return "?";
}

AbilityMap ability_map(const AiTech& tech, const CostFunction& cost, int grid_n, std::size_t workers) {
    if (grid_n < 2) throw InputError("ability_map: grid_n must be >= 2");
    tech.validate();
    AbilityMap map;
    map.points.resize(grid_n);
    parallel_for(static_cast<std::size_t>(grid_n), workers, [&](std::size_t i) {
        const double t = static_cast<double>(i) / (grid_n - 1);
        map.points[i] = {t, decide(t, tech, cost)};
    });
    return map;
}

RegimeProblem regime_problem(const AiTech& tech, const CostFunction& cost) {
    tech.validate();
    return {
        [tech, &cost](double t) { return solve_solver(t, tech, cost); },
        [tech, &cost](double t) { return solve_helper(t, tech, cost); },
    };
}

ThresholdResult find_threshold(const RegimeProblem& problem, const ThresholdOptions& options) {
    if (options.verification_points < 2) throw InputError("find_threshold: need >= 2 verification points");
    if (!(options.tol > 0.0)) throw InputError("find_threshold: tol must be positive");

    auto g = [&](double t) { return problem.helper(t).utility - problem.solver(t).utility; };

    const int n = options.verification_points;
    std::vector<std::pair<double, double>> grid(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        grid[i] = {t, g(t)};
    }

    ThresholdResult result;
    int sign_changes = 0;
    bool rising = true;
    for (int i = 1; i < n; ++i) {
        const double delta = grid[i].second - grid[i - 1].second;
        if (delta < -options.monotone_slack && result.gap_function_monotone) {
            result.gap_function_monotone = false;
            result.monotonicity_witness = grid[i].first;
        }
        const bool prev_helper = grid[i - 1].second >= 0.0;
        const bool helper = grid[i].second >= 0.0;
        if (prev_helper != helper) {
            ++sign_changes;
            rising = rising && helper;
        }
    }
    if (sign_changes > 1 || !rising) {
        std::ostringstream msg;
        msg << "U^h - U^s is not single-crossing from below on the verification grid (" << sign_changes
            << " sign change(s)); threshold is not unique";
        throw VerificationError(msg.str(), grid);
    }

    auto populate = [&](double t, Boundary boundary) {
        const RegimeSolution s = problem.solver(t);
        const RegimeSolution h = problem.helper(t);
        result.threshold = t;
        result.solver_ability = s.ability;
        result.helper_ability = h.ability;
        result.gap = h.ability - s.ability;
        result.indifference_residual = std::abs(h.utility - s.utility);
        result.boundary = boundary;
        return result;
    };

    if (grid.front().second >= 0.0) return populate(0.0, Boundary::AllHelper);
    if (grid.back().second < 0.0) return populate(1.0, Boundary::AllSolver);
    return populate(bisect_root(g, 0.0, 1.0, options.tol), Boundary::Interior);
}

ThresholdResult find_threshold(const AiTech& tech, const CostFunction& cost, const ThresholdOptions& options) {
    return find_threshold(regime_problem(tech, cost), options);
}

PropositionReport verify_proposition(const AiTech& tech, const CostFunction& cost, int grid_n, double tol) {
    PropositionReport report;
    report.threshold = find_threshold(tech, cost);
    const ThresholdResult& thr = report.threshold;
    if (thr.boundary != Boundary::Interior) {
        throw InputError("verify_proposition requires an Interior threshold, got " +
                         std::string(to_string(thr.boundary)));
    }

    auto fail = [&](const std::string& clause, auto&&... detail) {
        std::ostringstream msg;
        msg.precision(12);
        msg << clause << ": ";
        (msg << ... << detail);
        report.failures.push_back(msg.str());
    };

    const AbilityMap map = ability_map(tech, cost, grid_n);
    report.monotone = true;
    for (std::size_t i = 1; i < map.points.size(); ++i) {
        const auto& prev = map.points[i - 1];
        const auto& cur = map.points[i];
        if (cur.decision.ability < prev.decision.ability - 1e-8) {
            report.monotone = false;
            fail("monotone", "A(", cur.t, ") = ", cur.decision.ability, " < A(", prev.t, ") = ",
                 prev.decision.ability);
            break;
        }
    }

    report.indifferent_at_T = thr.indifference_residual <= tol;
    if (!report.indifferent_at_T) fail("indifferent_at_T", "|U^h(T) - U^s(T)| = ", thr.indifference_residual);

    report.bracketed = thr.solver_ability <= tech.d && tech.d <= thr.helper_ability;
    if (!report.bracketed)
        fail("bracketed", "a^s(T) = ", thr.solver_ability, ", d = ", tech.d, ", a^h(T) = ", thr.helper_ability);

    report.gap_positive = thr.gap > tol;
    if (!report.gap_positive) fail("gap_positive", "gap = ", thr.gap);

    // A continuous crossing would put both regime optima at the kink d, which
    // needs 1 - p >= dc/da(d, T) >= 1 and so fails for every p > 0.
    report.foc_contradiction_check = report.gap_positive;
    if (!report.foc_contradiction_check) {
        const double marginal = cost.partial(tech.d, thr.threshold, tech, Variable::Ability);
        fail("foc_contradiction_check", "continuous crossing at d; dc/da(d, T) = ", marginal,
             ", 1 - p = ", 1.0 - tech.p);
    }

    report.gap_function_monotone = thr.gap_function_monotone;
    if (!report.gap_function_monotone)
        fail("gap_function_monotone", "U^h - U^s decreases near t = ", thr.monotonicity_witness.value_or(-1.0));

    return report;
}

}  // namespace ailearn
