#pragma once

#include "ailearn/agent.hpp"
#include "ailearn/cost_model.hpp"
#include "ailearn/equilibrium.hpp"

#include <functional>

namespace ailearn {

// Brute-force counterparts of the regime solvers and the threshold search.
// Nothing here goes through the bracketing optimizer or bisection.

struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;

    void validate() const;
    double resolution() const { return (hi - lo) / (n - 1); }
};

struct GridMaximum {
    double argmax = 0.0;
    double value = 0.0;
};

/// Exhaustive argmax; ties go to the smallest abscissa. NumericalError names
/// the first grid point with a non-finite value.
GridMaximum grid_argmax(const std::function<double(double)>& objective, const GridSpec& spec);

inline constexpr int kOracleAbilityPoints = 100001;
inline constexpr int kOracleTypePoints = 2001;

AgentDecision oracle_decide(double t, const AiTech& tech, const CostFunction& cost,
                            int n = kOracleAbilityPoints);

struct OracleThreshold {
    double threshold = 0.0;
    Boundary boundary = Boundary::Interior;
    /// Width of the t-cell that brackets the switch.
    double cell = 0.0;
};

/// First type on the grid that chooses Helper; returns the midpoint of the
/// bracketing cell.
OracleThreshold oracle_threshold(const AiTech& tech, const CostFunction& cost, int t_grid_n = kOracleTypePoints,
                                 int a_grid_n = kOracleAbilityPoints);

}  // namespace ailearn
