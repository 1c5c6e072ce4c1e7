#include <doctest.h>

#include "ailearn/cost_model.hpp"
#include "ailearn/errors.hpp"

#include <cmath>
#include <random>

using namespace ailearn;

namespace {

const CostParams kBaseline{0.25, 1.0, 1.0, 0.0, 0.0};
const AiTech kTech{0.6, 0.5};

bool close_to_fd(double analytic, double fd) {
    return std::abs(analytic - fd) <= std::max(1e-6, 1e-4 * std::abs(analytic));
}

// Cost rising with type: violates decreasing differences.
class IncreasingInType final : public CostFunction {
protected:
    double do_cost(double a, double t, const AiTech&) const override { return a * a * (t + 0.25) / 2.0; }
    double do_partial(double a, double t, const AiTech&, Variable wrt) const override {
        return wrt == Variable::Ability ? a * (t + 0.25) : wrt == Variable::Type ? a * a / 2.0 : 0.0;
    }
    double do_cross_partial(double a, double, const AiTech&, Variable with) const override {
        return with == Variable::Type ? a : 0.0;
    }
};

}  // namespace

TEST_CASE("eval_cost on the quadratic baseline") {
    CHECK(eval_cost(0.0, 0.5, kTech, kBaseline) == 0.0);
    CHECK(eval_cost(0.8, 0.55, kTech, kBaseline) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(eval_cost(0.4, 0.55, kTech, kBaseline) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("eval_cost rejects out-of-domain arguments") {
    CHECK_THROWS_AS(eval_cost(1.1, 0.5, kTech, kBaseline), InputError);
    CHECK_THROWS_AS(eval_cost(0.5, -0.1, kTech, kBaseline), InputError);
    CHECK_THROWS_AS(eval_cost(0.5, 0.5, AiTech{1.2, 0.5}, kBaseline), InputError);
    CHECK_THROWS_AS(eval_cost(0.5, 0.5, kTech, CostParams{0.0, 1.0, 1.0, 0.0, 0.0}), InputError);
    CHECK_THROWS_AS(eval_cost(0.5, 0.5, kTech, CostParams{0.25, 1.0, -1.0, 0.0, 0.0}), InputError);
    CHECK_THROWS_AS(eval_cost(0.5, 0.5, kTech, CostParams{0.25, 1.0, 1.0, -0.1, 0.0}), InputError);
}

TEST_CASE("cost_partial matches closed forms and finite differences") {
    const ParametricCost cost(kBaseline);
    const double da = cost_partial(0.4, 0.55, kTech, kBaseline, Variable::Ability);
    CHECK(da == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cost.partial_fd(0.4, 0.55, kTech, Variable::Ability) == doctest::Approx(0.5).epsilon(1e-9));

    CHECK(cost_partial(0.0, 0.3, kTech, kBaseline, Variable::Ability) == 0.0);
    CHECK(cost_partial(0.7, 0.3, kTech, kBaseline, Variable::Accuracy) == 0.0);
    CHECK(cost_partial(0.7, 0.3, kTech, kBaseline, Variable::Frontier) == 0.0);

    CHECK(parse_variable("p") == Variable::Accuracy);
    CHECK_THROWS_AS(parse_variable("x"), InputError);
}

TEST_CASE("cross_partial matches closed forms and nested finite differences") {
    const ParametricCost baseline(kBaseline);
    CHECK(cross_partial(0.4, 0.55, kTech, kBaseline, Variable::Type) == doctest::Approx(-0.625).epsilon(1e-14));
    CHECK(baseline.cross_partial_fd(0.4, 0.55, kTech, Variable::Type) == doctest::Approx(-0.625).epsilon(1e-6));
    CHECK(cross_partial(0.4, 0.55, kTech, kBaseline, Variable::Accuracy) == 0.0);

    const CostParams complementary{0.25, 1.0, 1.0, 0.5, 0.0};
    const double expected = -0.5 * 0.4 / (0.8 * std::exp(0.25));
    CHECK(expected == doctest::Approx(-0.19470).epsilon(1e-4));
    CHECK(cross_partial(0.4, 0.55, kTech, complementary, Variable::Accuracy) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(ParametricCost(complementary).cross_partial_fd(0.4, 0.55, kTech, Variable::Accuracy) ==
          doctest::Approx(expected).epsilon(1e-6));

    CHECK_THROWS_AS(cross_partial(0.4, 0.55, kTech, kBaseline, Variable::Ability), InputError);
}

TEST_CASE("cost family invariants hold for random valid parameters") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    std::uniform_real_distribution<double> t0(0.05, 1.0), s(0.2, 3.0), gamma(0.5, 3.0), beta(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const CostParams params{t0(rng), s(rng), gamma(rng), beta(rng), beta(rng)};
        const ParametricCost cost(params);
        const AiTech tech{unit(rng), unit(rng)};
        const double a = unit(rng);
        const double t = unit(rng);
        CAPTURE(trial);
        CHECK(cost.cost(0.0, t, tech) == 0.0);
        CHECK(cost.cost(a, t, tech) < cost.cost(std::min(1.0, a + 0.01), t, tech));
        for (Variable v : {Variable::Ability, Variable::Type, Variable::Accuracy, Variable::Frontier})
            CHECK(close_to_fd(cost.partial(a, t, tech, v), cost.partial_fd(a, t, tech, v)));
        for (Variable v : {Variable::Type, Variable::Accuracy, Variable::Frontier}) {
            CHECK(cost.cross_partial(a, t, tech, v) <= 0.0);
            CHECK(close_to_fd(cost.cross_partial(a, t, tech, v), cost.cross_partial_fd(a, t, tech, v)));
        }
    }
}

TEST_CASE("check_decreasing_differences") {
    SUBCASE("baseline holds on a 21-point grid") {
        const auto report = check_decreasing_differences(kBaseline, kTech, 21);
        CHECK(report.holds);
        CHECK(report.worst_violation <= 0.0);
    }
    SUBCASE("coarsest grid") {
        CHECK(check_decreasing_differences(kBaseline, kTech, 2).holds);
        CHECK_THROWS_AS(check_decreasing_differences(kBaseline, kTech, 1), InputError);
    }
    SUBCASE("every valid parameter set holds") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> t0(0.05, 1.0), s(0.2, 3.0), gamma(0.3, 4.0), beta(0.0, 3.0);
        for (int trial = 0; trial < 20; ++trial) {
            const CostParams params{t0(rng), s(rng), gamma(rng), beta(rng), beta(rng)};
            CHECK(check_decreasing_differences(params, kTech, 11).holds);
        }
    }
    SUBCASE("cost increasing in type is caught with a witness") {
        const auto report = check_decreasing_differences(IncreasingInType{}, kTech, 11);
        CHECK_FALSE(report.holds);
        CHECK(report.worst_violation > 0.0);
        CHECK(report.a2 > report.a1);
        CHECK(report.t2 > report.t1);
        const IncreasingInType c;
        const double high = c.cost(report.a2, report.t2, kTech) - c.cost(report.a1, report.t2, kTech);
        const double low = c.cost(report.a2, report.t1, kTech) - c.cost(report.a1, report.t1, kTech);
        CHECK(high - low == doctest::Approx(report.worst_violation));
    }
}

TEST_CASE("apply_reduction: proportional savings") {
    const CostPtr base = make_cost(kBaseline);
    const CostPtr reduced = apply_reduction(base, ProportionalReduction{0.8}, kTech);
    CHECK(reduced->cost(0.8, 0.55, kTech) == doctest::Approx(0.32).epsilon(1e-14));

    const double eps = 1e-6;
    const CostPtr nearly = apply_reduction(base, ProportionalReduction{1.0 - eps}, kTech);
    const double c = base->cost(0.7, 0.4, kTech);
    CHECK(std::abs(nearly->cost(0.7, 0.4, kTech) - c) <= eps * c * (1 + 1e-9));

    // k' = (1 - rho) dc/da > 0 for a > 0.
    for (double a : {0.1, 0.5, 0.9}) {
        const double k_prime = reduction_marginal(*base, ProportionalReduction{0.8}, a, 0.3, kTech);
        CHECK(k_prime == doctest::Approx(0.2 * base->partial(a, 0.3, kTech, Variable::Ability)));
        CHECK(k_prime > 0.0);
    }

    CHECK_THROWS_AS(apply_reduction(base, ProportionalReduction{1.0}, kTech), InputError);
    CHECK_THROWS_AS(apply_reduction(base, ProportionalReduction{0.0}, kTech), InputError);
}

TEST_CASE("apply_reduction: cumulative improvements") {
    const CostPtr base = make_cost(kBaseline);

    SUBCASE("zero marginal reduction leaves cost unchanged") {
        const CostPtr same = apply_reduction(base, power_marginal_reduction(0.0, 1.0), kTech);
        for (double a : {0.0, 0.3, 1.0}) CHECK(same->cost(a, 0.4, kTech) == doctest::Approx(base->cost(a, 0.4, kTech)));
    }
    SUBCASE("linear marginal reduction integrates in closed form") {
        // Mk = 0.3 a  =>  k = 0.15 a^2; dc/da = a / (t + t0) >= 0.8 a keeps the reduced cost increasing.
        const CostPtr reduced = apply_reduction(base, power_marginal_reduction(0.3, 1.0), kTech);
        const double a = 0.7, t = 0.4;
        CHECK(std::abs(reduced->cost(a, t, kTech) - (a * a / (2 * (t + 0.25)) - 0.15 * a * a)) < 1e-9);
        CHECK(reduced->partial(a, t, kTech, Variable::Ability) == doctest::Approx(a / (t + 0.25) - 0.3 * a));
        CHECK(reduced->partial(a, t, kTech, Variable::Type) ==
              doctest::Approx(base->partial(a, t, kTech, Variable::Type)));
        CHECK(reduced->cross_partial(a, t, kTech, Variable::Type) ==
              doctest::Approx(base->cross_partial(a, t, kTech, Variable::Type)).epsilon(1e-8));
        CHECK(close_to_fd(reduced->partial(a, t, kTech, Variable::Ability),
                          reduced->partial_fd(a, t, kTech, Variable::Ability)));
    }
    SUBCASE("tabulated marginal reduction interpolates bilinearly") {
        std::vector<double> a_grid{0.0, 0.5, 1.0}, t_grid{0.0, 1.0};
        std::vector<double> values{0.0, 0.0, 0.15, 0.15, 0.3, 0.3};  // 0.3 a, flat in t
        const CostPtr reduced =
            apply_reduction(base, tabulated_marginal_reduction(a_grid, t_grid, values), kTech);
        CHECK(std::abs(reduced->cost(0.6, 0.2, kTech) - (0.36 / 0.9 - 0.15 * 0.36)) < 1e-9);
        CHECK_THROWS_AS(tabulated_marginal_reduction({0.0, 1.0}, {0.0, 1.0}, {1.0}), InputError);
    }
    SUBCASE("a reduction that makes cost non-increasing is rejected") {
        // dc/da(0, t) = 0 < Mk = 0.1.
        CHECK_THROWS_AS(apply_reduction(base, power_marginal_reduction(0.1, 0.0), kTech), InputError);
    }
}
