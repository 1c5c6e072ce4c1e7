#include <doctest.h>

#include "ailearn/errors.hpp"
#include "ailearn/numerics.hpp"
#include "ailearn/statics.hpp"

#include <cmath>
#include <random>

using namespace ailearn;

namespace {

const AiTech kTech{0.6, 0.5};
const CostParams kBaselineParams{0.25, 1.0, 1.0, 0.0, 0.0};
const ParametricCost kBaseline(kBaselineParams);

CostParams with_beta_p(double beta_p) { return {0.25, 1.0, 1.0, beta_p, 0.0}; }

}  // namespace

TEST_CASE("ability_sensitivity") {
    SUBCASE("helper ability ignores technology when cost does") {
        const auto s = ability_sensitivity(0.7, kTech, kBaseline, Regime::Helper);
        CHECK(s.ability == doctest::Approx(0.95));
        CHECK_FALSE(s.clamped);
        CHECK(std::abs(s.d_ability_dp) < 1e-9);
        CHECK(std::abs(s.d_ability_dd) < 1e-9);
    }
    SUBCASE("solver ability falls with accuracy: da/dp = -(t + t0)") {
        const auto s = ability_sensitivity(0.55, kTech, kBaseline, Regime::Solver);
        CHECK(s.d_ability_dp == doctest::Approx(-0.8).epsilon(1e-6));
        CHECK(std::abs(s.d_ability_dd) < 1e-9);
        CHECK(s.cross_partial_ap == 0.0);
    }
    SUBCASE("complementarity weaker than -1 keeps da/dp negative") {
        const ParametricCost cost(with_beta_p(0.5));
        const auto s = ability_sensitivity(0.55, kTech, cost, Regime::Solver);
        CHECK(s.cross_partial_ap > -1.0);
        CHECK(s.cross_partial_ap == doctest::Approx(-0.5 * s.ability / (0.8 * std::exp(0.25))));
        // a = (1-p)(t+t0) e^{beta_p p}  =>  da/dp = (t+t0) e^{beta_p p} ((1-p) beta_p - 1)
        const double expected = 0.8 * std::exp(0.25) * (0.5 * 0.5 - 1.0);
        CHECK(s.d_ability_dp == doctest::Approx(expected).epsilon(1e-6));
        CHECK(s.d_ability_dp < 0.0);
    }
    SUBCASE("clamped optimum is flagged") {
        const auto s = ability_sensitivity(0.3, kTech, kBaseline, Regime::Helper);
        CHECK(s.clamped);
        CHECK_FALSE(s.warning.empty());
    }
}

TEST_CASE("helper ability is invariant to p when beta_p = 0") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.05, 0.95), beta(0.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const ParametricCost cost(CostParams{0.25, 1.0, 1.5, 0.0, beta(rng)});
        const double t = unit(rng), d = unit(rng);
        const double a1 = solve_helper(t, AiTech{d, unit(rng)}, cost).ability;
        const double a2 = solve_helper(t, AiTech{d, unit(rng)}, cost).ability;
        CHECK(a1 == doctest::Approx(a2).epsilon(1e-12));
    }
}

TEST_CASE("threshold_sensitivity on the baseline") {
    const SensitivityReport r = threshold_sensitivity(kTech, kBaseline);
    const double dT_dp = 2.0 * 0.6 / (1.5 * 1.5);
    const double dT_dd = 2.0 / 1.5;
    CHECK(std::abs(r.dT_dp - dT_dp) <= 1e-3 * dT_dp);
    CHECK(std::abs(r.dT_dd - dT_dd) <= 1e-3 * dT_dd);
    CHECK(r.analytic_sign_dp == 1);
    CHECK(r.analytic_sign_dd == 1);
    // No complementarity: the criteria reduce to d - a^s(T) and p.
    CHECK(r.criterion_dp == doctest::Approx(0.2).epsilon(1e-8));
    CHECK(r.criterion_dd == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(r.agree);
}

TEST_CASE("the integral criterion matches the difference of first partials") {
    const ParametricCost cost(CostParams{0.3, 1.2, 1.4, 0.4, 0.7});
    const AiTech tech{0.7, 0.4};
    const SensitivityReport r = threshold_sensitivity(tech, cost);
    const double T = r.threshold.threshold;
    const double a_s = r.threshold.solver_ability;
    const double a_h = r.threshold.helper_ability;
    const double direct = (tech.d - a_s) + cost.partial(a_h, T, tech, Variable::Accuracy) -
                          cost.partial(a_s, T, tech, Variable::Accuracy);
    CHECK(r.criterion_dp == doctest::Approx(direct).epsilon(1e-8));
    CHECK(r.agree);
}

TEST_CASE("strong accuracy complementarity reverses the threshold direction") {
    auto criterion = [](double beta_p) {
        return threshold_sensitivity(kTech, ParametricCost(with_beta_p(beta_p))).criterion_dp;
    };
    // Tune beta_p until the criterion flips; with a^s(T) = 0.4 and a^h(T) = 0.8
    // for every beta_p the flip is at 0.2 / 0.3.
    const double flip = bisect_root(criterion, 0.0, 1.0, 1e-10);
    CHECK(flip == doctest::Approx(2.0 / 3.0).epsilon(1e-7));

    const double beta_p = 1.0;
    const SensitivityReport r = threshold_sensitivity(kTech, ParametricCost(with_beta_p(beta_p)));
    CHECK(r.analytic_sign_dp == -1);
    CHECK(r.dT_dp < 0.0);
    CHECK(r.agree);
    // T = 2d/(2-p) e^{-beta_p p} - t0
    const double expected = std::exp(-beta_p * 0.5) * (2 * 0.6 / (1.5 * 1.5) - beta_p * 2 * 0.6 / 1.5);
    CHECK(r.dT_dp == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("threshold_sensitivity refuses boundary configurations") {
    CHECK_THROWS_AS(threshold_sensitivity(AiTech{0.0, 0.5}, kBaseline), InputError);
    CHECK_THROWS_AS(threshold_sensitivity(AiTech{0.6, 0.99995}, kBaseline, 1e-4), InputError);
    CHECK_THROWS_AS(threshold_sensitivity(kTech, kBaseline, 0.0), InputError);
}

TEST_CASE("numeric and analytic threshold directions agree on random scenarios") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.1, 0.9), t0(0.05, 1.0), s(0.3, 3.0), gamma(0.5, 3.0),
        beta(0.0, 2.0);
    int computed = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const AiTech tech{unit(rng), unit(rng)};
        const ParametricCost cost(CostParams{t0(rng), s(rng), gamma(rng), beta(rng), beta(rng)});
        SensitivityReport r;
        try {
            r = threshold_sensitivity(tech, cost);
        } catch (const InputError&) {
            continue;
        }
        ++computed;
        CAPTURE(trial);
        if (std::abs(r.dT_dp) > 1e-6 && std::abs(r.criterion_dp) > 1e-6)
            CHECK((r.dT_dp > 0) == (r.criterion_dp > 0));
        if (std::abs(r.dT_dd) > 1e-6 && std::abs(r.criterion_dd) > 1e-6)
            CHECK((r.dT_dd > 0) == (r.criterion_dd > 0));
    }
    CHECK(computed >= 15);
}

TEST_CASE("reduction_threshold_shift") {
    const CostPtr base = make_cost(kBaselineParams);
    SUBCASE("proportional savings of 20%") {
        const ThresholdShift shift = reduction_threshold_shift(kTech, base, ProportionalReduction{0.8});
        CHECK(std::abs(shift.before - 0.55) <= 1e-8);
        CHECK(std::abs(shift.after - 0.39) <= 1e-6);
        CHECK(std::abs(shift.delta + 0.16) <= 1e-6);
        CHECK(shift.marginal_reduction_positive);
        CHECK(shift.sign_consistent);
    }
    SUBCASE("proportional savings of 5%") {
        const ThresholdShift shift = reduction_threshold_shift(kTech, base, ProportionalReduction{0.95});
        CHECK(std::abs(shift.delta - 2 * 0.6 * (0.95 - 1.0) / 1.5) <= 1e-6);
    }
    SUBCASE("zero cumulative reduction") {
        const ThresholdShift shift = reduction_threshold_shift(kTech, base, power_marginal_reduction(0.0, 1.0));
        CHECK(std::abs(shift.delta) <= 1e-9);
        CHECK_FALSE(shift.marginal_reduction_positive);
        CHECK(shift.sign_consistent);
    }
    SUBCASE("positive cumulative reduction lowers T") {
        const ThresholdShift shift = reduction_threshold_shift(kTech, base, power_marginal_reduction(0.3, 1.0));
        CHECK(shift.marginal_reduction_positive);
        CHECK(shift.delta < 0.0);
        CHECK(shift.sign_consistent);
    }
}

TEST_CASE("proportional reductions strictly lower T on random interior scenarios") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.1, 0.9), t0(0.05, 0.6), s(0.5, 2.0), gamma(0.5, 3.0),
        beta(0.0, 1.0), rho(0.05, 0.95);
    int scenarios = 0;
    for (int trial = 0; trial < 400 && scenarios < 20; ++trial) {
        const AiTech tech{unit(rng), unit(rng)};
        const CostParams params{t0(rng), s(rng), gamma(rng), beta(rng), beta(rng)};
        const double r = rho(rng);
        const ThresholdShift shift = reduction_threshold_shift(tech, make_cost(params), ProportionalReduction{r});
        if (shift.boundary_before != Boundary::Interior || shift.boundary_after != Boundary::Interior) continue;
        ++scenarios;
        CAPTURE(trial);
        CHECK(shift.delta < 0.0);
        CHECK(shift.sign_consistent);
    }
    CHECK(scenarios == 20);
}
