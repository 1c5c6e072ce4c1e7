#include "ailearn/oracle.hpp"

#include "ailearn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ailearn {

namespace {

// Union of the human rectangle [0,a] x [0,1] and the AI rectangle [0,d] x [0,p]
// by inclusion-exclusion.
double union_area(double a, const AiTech& tech) {
    const double human = a;
    const double ai = tech.d * tech.p;
    const double overlap = std::min(a, tech.d) * tech.p;
    return human + ai - overlap;
}

}  // namespace

void GridSpec::validate() const {
    if (n < 2) throw InputError("GridSpec: n must be >= 2");
    if (!(lo <= hi)) throw InputError("GridSpec: lo must not exceed hi");
}

GridMaximum grid_argmax(const std::function<double(double)>& objective, const GridSpec& spec) {
    spec.validate();
    GridMaximum best{spec.lo, 0.0};
    for (int i = 0; i < spec.n; ++i) {
        const double x = (i == spec.n - 1) ? spec.hi : spec.lo + (spec.hi - spec.lo) * i / (spec.n - 1);
        const double f = objective(x);
        if (!std::isfinite(f)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "grid_argmax: non-finite objective " << f << " at grid point " << i << " (x = " << x << ")";
            throw NumericalError(msg.str());
        }
        if (i == 0 || f > best.value) best = {x, f};
    }
    return best;
}

AgentDecision oracle_decide(double t, const AiTech& tech, const CostFunction& cost, int n) {
    tech.validate();
    auto objective = [&](double a) { return union_area(a, tech) - cost.cost(a, t, tech); };
    const GridMaximum solver = grid_argmax(objective, {0.0, tech.d, n});
    const GridMaximum helper = grid_argmax(objective, {tech.d, 1.0, n});
    if (solver.value > helper.value + kRegimeTieTolerance)
        return {Regime::Solver, solver.argmax, solver.value, union_area(solver.argmax, tech)};
    return {Regime::Helper, helper.argmax, helper.value, union_area(helper.argmax, tech)};
}

OracleThreshold oracle_threshold(const AiTech& tech, const CostFunction& cost, int t_grid_n, int a_grid_n) {
    if (t_grid_n < 2) throw InputError("oracle_threshold: t_grid_n must be >= 2");
    const double cell = 1.0 / (t_grid_n - 1);
    double previous = 0.0;
    for (int i = 0; i < t_grid_n; ++i) {
        const double t = (i == t_grid_n - 1) ? 1.0 : i * cell;
        if (oracle_decide(t, tech, cost, a_grid_n).regime == Regime::Helper) {
            if (i == 0) return {0.0, Boundary::AllHelper, cell};
            return {0.5 * (previous + t), Boundary::Interior, cell};
        }
        previous = t;
    }
    return {1.0, Boundary::AllSolver, cell};
}

}  // namespace ailearn
