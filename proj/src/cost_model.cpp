#include "ailearn/cost_model.hpp"

#include "ailearn/errors.hpp"
#include "ailearn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ailearn {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

std::string describe(const char* name, double value) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name << " = " << value;
    return msg.str();
}

void check_point(double a, double t, const AiTech& tech) {
    if (!in_unit(a)) throw InputError("ability out of [0,1]: " + describe("a", a));
    if (!in_unit(t)) throw InputError("type out of [0,1]: " + describe("t", t));
    tech.validate();
}

class ProportionalCost final : public CostFunction {
public:
    ProportionalCost(CostPtr base, double rho) : base_(std::move(base)), rho_(rho) {}

protected:
    double do_cost(double a, double t, const AiTech& tech) const override {
        return rho_ * base_->cost(a, t, tech);
    }
    double do_partial(double a, double t, const AiTech& tech, Variable wrt) const override {
        return rho_ * base_->partial(a, t, tech, wrt);
    }
    double do_cross_partial(double a, double t, const AiTech& tech, Variable with) const override {
        return rho_ * base_->cross_partial(a, t, tech, with);
    }

private:
    CostPtr base_;
    double rho_;
};

class CumulativeCost final : public CostFunction {
public:
    CumulativeCost(CostPtr base, CumulativeReduction reduction)
        : base_(std::move(base)), reduction_(std::move(reduction)) {}

protected:
    double do_cost(double a, double t, const AiTech& tech) const override {
        const auto& mk = reduction_.marginal;
        return base_->cost(a, t, tech) - integrate([&](double x) { return mk(x, t); }, 0.0, a);
    }

    double do_partial(double a, double t, const AiTech& tech, Variable wrt) const override {
        const auto& mk = reduction_.marginal;
        switch (wrt) {
            case Variable::Ability:
                return base_->partial(a, t, tech, wrt) - mk(a, t);
            case Variable::Type:
                return base_->partial(a, t, tech, wrt) -
                       integrate([&](double x) { return mk_dt(x, t); }, 0.0, a);
            case Variable::Accuracy:
            case Variable::Frontier:
                return base_->partial(a, t, tech, wrt);
        }
        return 0.0;
    }

    double do_cross_partial(double a, double t, const AiTech& tech, Variable with) const override {
        if (with == Variable::Type) return base_->cross_partial(a, t, tech, with) - mk_dt(a, t);
        return base_->cross_partial(a, t, tech, with);
    }

private:
    double mk_dt(double a, double t) const {
        const auto& mk = reduction_.marginal;
        return central_difference([&](double x) { return mk(a, x); }, t, 1e-5, 0.0, 1.0);
    }

    CostPtr base_;
    CumulativeReduction reduction_;
};

}  // namespace

void AiTech::validate() const {
    if (!in_unit(d)) throw InputError("tech.d must lie in [0,1]: " + describe("d", d));
    if (!in_unit(p)) throw InputError("tech.p must lie in [0,1]: " + describe("p", p));
}

void CostParams::validate() const {
    if (!(t0 > 0.0) || !std::isfinite(t0)) throw InputError("cost.t0 must be > 0: " + describe("t0", t0));
    if (!(s > 0.0) || !std::isfinite(s)) throw InputError("cost.s must be > 0: " + describe("s", s));
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw InputError("cost.gamma must be > 0: " + describe("gamma", gamma));
    if (!(beta_p >= 0.0) || !std::isfinite(beta_p))
        throw InputError("cost.beta_p must be >= 0: " + describe("beta_p", beta_p));
    if (!(beta_d >= 0.0) || !std::isfinite(beta_d))
        throw InputError("cost.beta_d must be >= 0: " + describe("beta_d", beta_d));
}

Variable parse_variable(std::string_view name) {
    if (name == "a") return Variable::Ability;
    if (name == "t") return Variable::Type;
    if (name == "p") return Variable::Accuracy;
    if (name == "d") return Variable::Frontier;
    throw InputError("unrecognized variable '" + std::string(name) + "' (expected a, t, p or d)");
}

std::string_view to_string(Variable v) {
    switch (v) {
        case Variable::Ability: return "a";
        case Variable::Type: return "t";
        case Variable::Accuracy: return "p";
        case Variable::Frontier: return "d";
    }
    return "?";
}

double CostFunction::cost(double a, double t, const AiTech& tech) const {
    check_point(a, t, tech);
    return do_cost(a, t, tech);
}

double CostFunction::partial(double a, double t, const AiTech& tech, Variable wrt) const {
    check_point(a, t, tech);
    return do_partial(a, t, tech, wrt);
}

double CostFunction::cross_partial(double a, double t, const AiTech& tech, Variable with) const {
    check_point(a, t, tech);
    if (with == Variable::Ability) throw InputError("cross_partial: pair must be (a,t), (a,p) or (a,d)");
    return do_cross_partial(a, t, tech, with);
}

double CostFunction::partial_fd(double a, double t, const AiTech& tech, Variable wrt, double h) const {
    check_point(a, t, tech);
    auto shifted = [&](double x) {
        AiTech moved = tech;
        switch (wrt) {
            case Variable::Ability: return do_cost(x, t, tech);
            case Variable::Type: return do_cost(a, x, tech);
            case Variable::Accuracy: moved.p = x; break;
            case Variable::Frontier: moved.d = x; break;
        }
        return do_cost(a, t, moved);
    };
    const double at = wrt == Variable::Ability ? a
                      : wrt == Variable::Type  ? t
                      : wrt == Variable::Accuracy ? tech.p
                                                  : tech.d;
    return central_difference(shifted, at, h, 0.0, 1.0);
}

double CostFunction::cross_partial_fd(double a, double t, const AiTech& tech, Variable with, double h) const {
    check_point(a, t, tech);
    if (with == Variable::Ability) throw InputError("cross_partial_fd: pair must be (a,t), (a,p) or (a,d)");
    auto marginal_at = [&](double x) {
        double tt = t;
        AiTech moved = tech;
        if (with == Variable::Type) tt = x;
        if (with == Variable::Accuracy) moved.p = x;
        if (with == Variable::Frontier) moved.d = x;
        return central_difference([&](double aa) { return do_cost(aa, tt, moved); }, a, h, 0.0, 1.0);
    };
    const double at = with == Variable::Type ? t : with == Variable::Accuracy ? tech.p : tech.d;
    return central_difference(marginal_at, at, h, 0.0, 1.0);
}

ParametricCost::ParametricCost(CostParams params) : params_(params) { params_.validate(); }

double ParametricCost::marginal(double a, double t, const AiTech& tech) const {
    const double eta = std::exp(params_.beta_p * tech.p + params_.beta_d * tech.d);
    return params_.s * std::pow(a, params_.gamma) / ((t + params_.t0) * eta);
}

double ParametricCost::do_cost(double a, double t, const AiTech& tech) const {
    return marginal(a, t, tech) * a / (1.0 + params_.gamma);
}

double ParametricCost::do_partial(double a, double t, const AiTech& tech, Variable wrt) const {
    switch (wrt) {
        case Variable::Ability: return marginal(a, t, tech);
        case Variable::Type: return -do_cost(a, t, tech) / (t + params_.t0);
        case Variable::Accuracy: return -params_.beta_p * do_cost(a, t, tech);
        case Variable::Frontier: return -params_.beta_d * do_cost(a, t, tech);
    }
    return 0.0;
}

double ParametricCost::do_cross_partial(double a, double t, const AiTech& tech, Variable with) const {
    switch (with) {
        case Variable::Type: return -marginal(a, t, tech) / (t + params_.t0);
        case Variable::Accuracy: return -params_.beta_p * marginal(a, t, tech);
        case Variable::Frontier: return -params_.beta_d * marginal(a, t, tech);
        case Variable::Ability: break;
    }
    throw InputError("cross_partial: pair must be (a,t), (a,p) or (a,d)");
}

CostPtr make_cost(const CostParams& params) { return std::make_shared<ParametricCost>(params); }

double eval_cost(double a, double t, const AiTech& tech, const CostParams& params) {
    return ParametricCost(params).cost(a, t, tech);
}

double cost_partial(double a, double t, const AiTech& tech, const CostParams& params, Variable wrt) {
    return ParametricCost(params).partial(a, t, tech, wrt);
}

double cross_partial(double a, double t, const AiTech& tech, const CostParams& params, Variable with) {
    return ParametricCost(params).cross_partial(a, t, tech, with);
}

DecreasingDifferencesReport check_decreasing_differences(const CostFunction& cost, const AiTech& tech,
                                                         int grid_n) {
    if (grid_n < 2) throw InputError("check_decreasing_differences: grid_n must be >= 2");
    tech.validate();
    std::vector<double> grid(grid_n);
    for (int i = 0; i < grid_n; ++i) grid[i] = static_cast<double>(i) / (grid_n - 1);

    // table[i][j] = c(grid[i], grid[j])
    std::vector<double> table(static_cast<std::size_t>(grid_n) * grid_n);
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) table[i * grid_n + j] = cost.cost(grid[i], grid[j], tech);

    DecreasingDifferencesReport report;
    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (int i1 = 0; i1 < grid_n; ++i1)
        for (int i2 = i1 + 1; i2 < grid_n; ++i2)
            for (int j1 = 0; j1 < grid_n; ++j1)
                for (int j2 = j1 + 1; j2 < grid_n; ++j2) {
                    const double high = table[i2 * grid_n + j2] - table[i1 * grid_n + j2];
                    const double low = table[i2 * grid_n + j1] - table[i1 * grid_n + j1];
                    const double violation = high - low;
                    if (violation > report.worst_violation) {
                        report.worst_violation = violation;
                        report.a1 = grid[i1];
                        report.a2 = grid[i2];
                        report.t1 = grid[j1];
                        report.t2 = grid[j2];
                    }
                }
    // Rounding slack on differences of O(1) quantities.
    report.holds = report.worst_violation <= 1e-14;
    return report;
}

DecreasingDifferencesReport check_decreasing_differences(const CostParams& params, const AiTech& tech,
                                                         int grid_n) {
    return check_decreasing_differences(ParametricCost(params), tech, grid_n);
}

CumulativeReduction power_marginal_reduction(double scale, double exponent) {
    if (!(scale >= 0.0)) throw InputError("reduction.mk_scale must be >= 0");
    if (!(exponent >= 0.0)) throw InputError("reduction.mk_exponent must be >= 0");
    std::ostringstream label;
    label << "Mk(a,t) = " << scale << " * a^" << exponent;
    return {[scale, exponent](double a, double) { return scale * std::pow(a, exponent); }, label.str()};
}

CumulativeReduction tabulated_marginal_reduction(std::vector<double> a_grid, std::vector<double> t_grid,
                                                 std::vector<double> values) {
    if (a_grid.size() < 2 || t_grid.size() < 2)
        throw InputError("tabulated reduction needs at least two points per axis");
    if (values.size() != a_grid.size() * t_grid.size())
        throw InputError("tabulated reduction: value count does not match grid");
    if (!std::is_sorted(a_grid.begin(), a_grid.end(), std::less_equal<>()) ||
        !std::is_sorted(t_grid.begin(), t_grid.end(), std::less_equal<>()))
        throw InputError("tabulated reduction: grids must be strictly increasing");

    auto locate = [](const std::vector<double>& g, double x) {
        x = std::clamp(x, g.front(), g.back());
        auto it = std::upper_bound(g.begin(), g.end(), x);
        std::size_t hi = std::min<std::size_t>(it - g.begin(), g.size() - 1);
        std::size_t lo = hi - 1;
        return std::pair{lo, (x - g[lo]) / (g[hi] - g[lo])};
    };
    auto mk = [a_grid = std::move(a_grid), t_grid = std::move(t_grid), values = std::move(values),
               locate](double a, double t) {
        const auto [i, wa] = locate(a_grid, a);
        const auto [j, wt] = locate(t_grid, t);
        const std::size_t nt = t_grid.size();
        auto v = [&](std::size_t r, std::size_t c) { return values[r * nt + c]; };
        return (1 - wa) * ((1 - wt) * v(i, j) + wt * v(i, j + 1)) +
               wa * ((1 - wt) * v(i + 1, j) + wt * v(i + 1, j + 1));
    };
    return {std::move(mk), "tabulated Mk"};
}

double reduction_marginal(const CostFunction& base, const CostReduction& reduction, double a, double t,
                          const AiTech& tech) {
    return std::visit(
        [&](const auto& r) -> double {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ProportionalReduction>) {
                return (1.0 - r.rho) * base.partial(a, t, tech, Variable::Ability);
            } else {
                return r.marginal(a, t);
            }
        },
        reduction);
}

CostPtr apply_reduction(CostPtr base, const CostReduction& reduction, const AiTech& tech) {
    if (!base) throw InputError("apply_reduction: null cost function");
    tech.validate();

    CostPtr reduced = std::visit(
        [&](const auto& r) -> CostPtr {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ProportionalReduction>) {
                if (!(r.rho > 0.0 && r.rho < 1.0))
                    throw InputError("reduction.rho must lie in (0,1): " + describe("rho", r.rho));
                return std::make_shared<ProportionalCost>(base, r.rho);
            } else {
                if (!r.marginal) throw InputError("cumulative reduction without a marginal function");
                return std::make_shared<CumulativeCost>(base, r);
            }
        },
        reduction);

    constexpr int n = 33;
    for (int i = 0; i < n; ++i) {
        const double a = static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double t = static_cast<double>(j) / (n - 1);
            const double k_prime = reduction_marginal(*base, reduction, a, t, tech);
            if (k_prime < -1e-12)
                throw InputError("reduction has negative marginal reduction at a = " + std::to_string(a) +
                                 ", t = " + std::to_string(t));
            if (reduced->partial(a, t, tech, Variable::Ability) < -1e-12)
                throw InputError("reduced cost is decreasing in ability at a = " + std::to_string(a) +
                                 ", t = " + std::to_string(t));
            if (reduced->cost(a, t, tech) < -1e-9)
                throw InputError("reduced cost is negative at a = " + std::to_string(a) +
                                 ", t = " + std::to_string(t));
        }
    }
    return reduced;
}

}  // namespace ailearn
