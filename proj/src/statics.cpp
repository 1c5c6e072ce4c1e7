#include "ailearn/statics.hpp"

#include "ailearn/errors.hpp"
#include "ailearn/numerics.hpp"

#include <cmath>
#include <sstream>

namespace ailearn {

namespace {

constexpr double kClampTol = 1e-9;

RegimeSolution solve_regime(Regime regime, double t, const AiTech& tech, const CostFunction& cost) {
    return regime == Regime::Solver ? solve_solver(t, tech, cost) : solve_helper(t, tech, cost);
}

bool on_regime_bound(Regime regime, double a, const AiTech& tech) {
    if (regime == Regime::Solver) return a <= kClampTol || a >= tech.d - kClampTol;
    return a <= tech.d + kClampTol || a >= 1.0 - kClampTol;
}

// Derivative of f at x in [0,1]: central when allowed and the stencil fits,
// otherwise one-sided.
double tech_derivative(const std::function<double(double)>& f, double x, double h, bool central,
                       std::string& note, const char* name) {
    const bool fits = x - h >= 0.0 && x + h <= 1.0;
    if (central && fits) return (f(x + h) - f(x - h)) / (2.0 * h);
    if (!fits) note += std::string(name) + " stencil truncated at the unit interval; ";
    if (x + h <= 1.0) return (f(x + h) - f(x)) / h;
    return (f(x) - f(x - h)) / h;
}

AiTech perturbed(const AiTech& tech, double dp, double dd) {
    AiTech moved{tech.d + dd, tech.p + dp};
    if (moved.p < 0.0 || moved.p > 1.0 || moved.d < 0.0 || moved.d > 1.0) {
        std::ostringstream msg;
        msg << "threshold_sensitivity: perturbation leaves the unit square at (d, p) = (" << moved.d << ", "
            << moved.p << "); use a smaller h";
        throw InputError(msg.str());
    }
    return moved;
}

}  // namespace

int sign_with_deadband(double x, double band) {
    if (x > band) return 1;
    if (x < -band) return -1;
    return 0;
}

AbilitySensitivity ability_sensitivity(double t, const AiTech& tech, const CostFunction& cost, Regime regime,
                                       double h) {
    if (!(h > 0.0)) throw InputError("ability_sensitivity: h must be positive");
    tech.validate();

    AbilitySensitivity out;
    out.ability = solve_regime(regime, t, tech, cost).ability;
    out.clamped = on_regime_bound(regime, out.ability, tech);
    if (out.clamped) out.warning = "optimum on the regime boundary; derivatives are one-sided; ";

    auto ability_at_p = [&](double p) { return solve_regime(regime, t, AiTech{tech.d, p}, cost).ability; };
    auto ability_at_d = [&](double d) { return solve_regime(regime, t, AiTech{d, tech.p}, cost).ability; };
    out.d_ability_dp = tech_derivative(ability_at_p, tech.p, h, !out.clamped, out.warning, "p");
    out.d_ability_dd = tech_derivative(ability_at_d, tech.d, h, !out.clamped, out.warning, "d");
    out.cross_partial_ap = cost.cross_partial(out.ability, t, tech, Variable::Accuracy);
    out.cross_partial_ad = cost.cross_partial(out.ability, t, tech, Variable::Frontier);
    return out;
}

SensitivityReport threshold_sensitivity(const AiTech& tech, const CostFunction& cost, double h) {
    if (!(h > 0.0)) throw InputError("threshold_sensitivity: h must be positive");
    SensitivityReport report;
    report.threshold = find_threshold(tech, cost);
    const ThresholdResult& thr = report.threshold;
    if (thr.boundary != Boundary::Interior) {
        throw InputError("threshold_sensitivity requires an Interior threshold, got " +
                         std::string(to_string(thr.boundary)));
    }

    auto interior_threshold = [&](const AiTech& moved) {
        const ThresholdResult r = find_threshold(moved, cost);
        if (r.boundary != Boundary::Interior) {
            std::ostringstream msg;
            msg << "threshold_sensitivity: threshold becomes " << to_string(r.boundary) << " at (d, p) = ("
                << moved.d << ", " << moved.p << "); use a smaller h";
            throw InputError(msg.str());
        }
        return r.threshold;
    };
    report.dT_dp = (interior_threshold(perturbed(tech, h, 0)) - interior_threshold(perturbed(tech, -h, 0))) /
                   (2.0 * h);
    report.dT_dd = (interior_threshold(perturbed(tech, 0, h)) - interior_threshold(perturbed(tech, 0, -h))) /
                   (2.0 * h);

    const double T = thr.threshold;
    const double a_s = thr.solver_ability;
    const double a_h = thr.helper_ability;
    auto neg_cross = [&](Variable with) {
        return integrate([&](double a) { return -cost.cross_partial(a, T, tech, with); }, a_s, a_h);
    };

    report.criterion_dp = (tech.d - a_s) - neg_cross(Variable::Accuracy);

    // Envelope terms from the bound d when an optimum sits on it.
    double corner = 0.0;
    const double marginal_at_d = cost.partial(tech.d, T, tech, Variable::Ability);
    if (a_s >= tech.d - kClampTol) corner += (1.0 - tech.p) - marginal_at_d;
    if (a_h <= tech.d + kClampTol) corner -= 1.0 - marginal_at_d;
    report.criterion_dd = tech.p - neg_cross(Variable::Frontier) + corner;

    report.analytic_sign_dp = sign_with_deadband(report.criterion_dp);
    report.analytic_sign_dd = sign_with_deadband(report.criterion_dd);
    report.agree = sign_with_deadband(report.dT_dp) == report.analytic_sign_dp &&
                   sign_with_deadband(report.dT_dd) == report.analytic_sign_dd;
    return report;
}

ThresholdShift reduction_threshold_shift(const AiTech& tech, const CostPtr& cost, const CostReduction& reduction) {
    if (!cost) throw InputError("reduction_threshold_shift: null cost function");
    const ThresholdResult before = find_threshold(tech, *cost);
    const CostPtr reduced = apply_reduction(cost, reduction, tech);
    const ThresholdResult after = find_threshold(tech, *reduced);

    ThresholdShift shift;
    shift.before = before.threshold;
    shift.after = after.threshold;
    shift.delta = after.threshold - before.threshold;
    shift.boundary_before = before.boundary;
    shift.boundary_after = after.boundary;

    constexpr int samples = 32;
    shift.marginal_reduction_positive = true;
    for (int i = 0; i < samples; ++i) {
        const double a = before.solver_ability + (before.helper_ability - before.solver_ability) * i / (samples - 1);
        if (!(reduction_marginal(*cost, reduction, a, before.threshold, tech) > 0.0)) {
            shift.marginal_reduction_positive = false;
            break;
        }
    }

    const bool both_interior = before.boundary == Boundary::Interior && after.boundary == Boundary::Interior;
    shift.sign_consistent = !(both_interior && shift.marginal_reduction_positive) || shift.delta < 0.0;
    return shift;
}

}  // namespace ailearn
