#pragma once

#include "ailearn/agent.hpp"
#include "ailearn/cost_model.hpp"
#include "ailearn/equilibrium.hpp"

#include <string>

namespace ailearn {

/// Sign with a dead band: |x| <= band maps to zero.
int sign_with_deadband(double x, double band = 1e-6);

struct AbilitySensitivity {
    double d_ability_dp = 0.0;
    double d_ability_dd = 0.0;
    double cross_partial_ap = 0.0;  // d2c/(da dp) at the optimum
    double cross_partial_ad = 0.0;  // d2c/(da dd) at the optimum
    double ability = 0.0;
    /// Optimum sits on the regime boundary; derivatives are then one-sided.
    bool clamped = false;
    std::string warning;
};

/// Finite-difference response of the regime optimum to p and d.
AbilitySensitivity ability_sensitivity(double t, const AiTech& tech, const CostFunction& cost, Regime regime,
                                       double h = 1e-5);

struct SensitivityReport {
    double dT_dp = 0.0;
    double dT_dd = 0.0;
    /// Quantities whose signs give the direction of T: positive means T rises.
    ///   p: (d - a^s) - integral_{a^s}^{a^h} -d2c/(da dp) da
    ///   d: p - integral_{a^s}^{a^h} -d2c/(da dd) da (+ corner terms when an
    ///      optimum sits on the moving bound d)
    double criterion_dp = 0.0;
    double criterion_dd = 0.0;
    int analytic_sign_dp = 0;
    int analytic_sign_dd = 0;
    bool agree = false;
    ThresholdResult threshold;
};

/// Central differences of T in p and d, next to the implicit-function signs.
/// Throws InputError when T is not Interior at tech or at any perturbation.
SensitivityReport threshold_sensitivity(const AiTech& tech, const CostFunction& cost, double h = 1e-4);

struct ThresholdShift {
    double before = 0.0;
    double after = 0.0;
    double delta = 0.0;
    Boundary boundary_before = Boundary::Interior;
    Boundary boundary_after = Boundary::Interior;
    /// k'(a, T) > 0 at all 32 sample points between a^s(T) and a^h(T).
    bool marginal_reduction_positive = false;
    /// delta < 0 whenever marginal_reduction_positive (vacuous otherwise, and
    /// for boundary states).
    bool sign_consistent = true;
};

ThresholdShift reduction_threshold_shift(const AiTech& tech, const CostPtr& cost, const CostReduction& reduction);

}  // namespace ailearn
