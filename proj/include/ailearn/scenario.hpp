#pragma once

#include "ailearn/cost_model.hpp"
#include "ailearn/policy.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace ailearn {

/// One analysis setup, loaded from an INI file:
///
///   [tech]       d, p                          (required)
///   [cost]       t0, s, gamma, beta_p, beta_d  (required)
///   [policy]     p_prime, lambda               (optional)
///   [reduction]  kind = proportional, rho      (optional)
///                kind = cumulative, mk_scale, mk_exponent
///   [grid]       n                             (optional, default 101)
///
/// Unknown sections or keys are errors.
struct Scenario {
    AiTech tech;
    CostParams cost;
    std::optional<Belief> policy;
    std::optional<CostReduction> reduction;
    int grid_n = 101;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

}  // namespace ailearn
