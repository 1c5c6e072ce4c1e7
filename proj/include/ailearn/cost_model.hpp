#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ailearn {

/// AI technology: problems up to difficulty `d` are attempted, each solved
/// correctly with probability `p`.
struct AiTech {
    double d = 0.0;
    double p = 0.0;

    void validate() const;
};

/// Parameters of the learning-cost family
///   c(a, t | d, p) = s * a^(1+gamma) / ((1+gamma) * (t + t0) * exp(beta_p*p + beta_d*d)).
struct CostParams {
    double t0 = 0.25;
    double s = 1.0;
    double gamma = 1.0;
    double beta_p = 0.0;
    double beta_d = 0.0;

    void validate() const;
};

enum class Variable { Ability, Type, Accuracy, Frontier };

/// Parses "a", "t", "p" or "d".
Variable parse_variable(std::string_view name);
std::string_view to_string(Variable v);

/// Learning cost c(a, t | d, p) with analytic first partials and the mixed
/// partials d2c/(da dx). Public entry points validate the domain
/// (a, t in [0,1], tech valid) and forward to the virtual implementation.
/// Implementations are immutable and safe to share between threads.
class CostFunction {
public:
    virtual ~CostFunction() = default;

    double cost(double a, double t, const AiTech& tech) const;
    double partial(double a, double t, const AiTech& tech, Variable wrt) const;
    /// d2c / (da dx) for x in {Type, Accuracy, Frontier}.
    double cross_partial(double a, double t, const AiTech& tech, Variable with) const;

    /// Central finite-difference companions used to validate the analytic forms.
    double partial_fd(double a, double t, const AiTech& tech, Variable wrt, double h = 1e-5) const;
    double cross_partial_fd(double a, double t, const AiTech& tech, Variable with, double h = 1e-4) const;

protected:
    virtual double do_cost(double a, double t, const AiTech& tech) const = 0;
    virtual double do_partial(double a, double t, const AiTech& tech, Variable wrt) const = 0;
    virtual double do_cross_partial(double a, double t, const AiTech& tech, Variable with) const = 0;
};

using CostPtr = std::shared_ptr<const CostFunction>;

/// The canonical parametric family.
class ParametricCost final : public CostFunction {
public:
    explicit ParametricCost(CostParams params);
    const CostParams& params() const noexcept { return params_; }

protected:
    double do_cost(double a, double t, const AiTech& tech) const override;
    double do_partial(double a, double t, const AiTech& tech, Variable wrt) const override;
    double do_cross_partial(double a, double t, const AiTech& tech, Variable with) const override;

private:
    double marginal(double a, double t, const AiTech& tech) const;
    CostParams params_;
};

CostPtr make_cost(const CostParams& params);

double eval_cost(double a, double t, const AiTech& tech, const CostParams& params);
double cost_partial(double a, double t, const AiTech& tech, const CostParams& params, Variable wrt);
double cross_partial(double a, double t, const AiTech& tech, const CostParams& params, Variable with);

struct DecreasingDifferencesReport {
    bool holds = true;
    /// max over a2 > a1, t2 > t1 of [c(a2,t2) - c(a1,t2)] - [c(a2,t1) - c(a1,t1)].
    double worst_violation = 0.0;
    double a1 = 0.0, a2 = 0.0, t1 = 0.0, t2 = 0.0;
};

DecreasingDifferencesReport check_decreasing_differences(const CostFunction& cost, const AiTech& tech,
                                                         int grid_n);
DecreasingDifferencesReport check_decreasing_differences(const CostParams& params, const AiTech& tech,
                                                         int grid_n);

/// Cost c - k with k = (1 - rho) c, i.e. the reduced cost is rho * c.
struct ProportionalReduction {
    double rho = 1.0;
};

/// Cost c(a,t) - integral_0^a Mk(alpha, t) d alpha.
struct CumulativeReduction {
    std::function<double(double a, double t)> marginal;
    std::string label;
};

using CostReduction = std::variant<ProportionalReduction, CumulativeReduction>;

/// Mk(a, t) = scale * a^exponent.
CumulativeReduction power_marginal_reduction(double scale, double exponent);

/// Mk bilinearly interpolated from a table; `values` is row-major with the
/// ability axis outer: values[i * t_grid.size() + j] = Mk(a_grid[i], t_grid[j]).
CumulativeReduction tabulated_marginal_reduction(std::vector<double> a_grid, std::vector<double> t_grid,
                                                 std::vector<double> values);

/// Marginal reduction dk/da at (a, t) for the given reduction over `base`.
double reduction_marginal(const CostFunction& base, const CostReduction& reduction, double a, double t,
                          const AiTech& tech);

/// Wraps `base` with the reduction. The reduced cost is validated on a
/// 33 x 33 (a, t) grid at `tech`: it must stay nonnegative and
/// nondecreasing in a, otherwise InputError.
CostPtr apply_reduction(CostPtr base, const CostReduction& reduction, const AiTech& tech);

}  // namespace ailearn
