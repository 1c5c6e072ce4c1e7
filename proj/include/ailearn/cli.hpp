#pragma once

#include "ailearn/equilibrium.hpp"
#include "ailearn/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ailearn {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitVerification = 2,
    kExitNumerical = 3,
};

/// 12 significant digits, trailing zeros kept; -0 prints as 0.
std::string format_real(double x);

struct SweepAxis {
    double lo = 0.0;
    double hi = 1.0;
    int steps = 2;

    double at(int i) const;
};

struct SweepRow {
    double d = 0.0;
    double p = 0.0;
    ThresholdResult result;
    /// Empty when the cell solved; otherwise the error message.
    std::string error;
};

/// find_threshold over the (d, p) grid, d outer and p inner. Cell failures are
/// recorded in the row. Output order does not depend on `workers`.
std::vector<SweepRow> sweep(const SweepAxis& d_axis, const SweepAxis& p_axis, const Scenario& scenario,
                            std::size_t workers);

/// Entry point behind the `ailearn` executable. `args[0]` is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ailearn
