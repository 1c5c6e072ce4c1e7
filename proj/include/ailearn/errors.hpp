#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ailearn {

/// Invalid argument, domain violation or malformed configuration.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A model invariant that was checked at runtime did not hold.
class VerificationError : public std::runtime_error {
public:
    VerificationError(const std::string& what,
                      std::vector<std::pair<double, double>> witness = {})
        : std::runtime_error(what), witness_(std::move(witness)) {}

    /// (t, value) pairs that exhibit the failure, when available.
    const std::vector<std::pair<double, double>>& witness() const noexcept { return witness_; }

private:
    std::vector<std::pair<double, double>> witness_;
};

/// Non-finite objective values, lost brackets, quadrature failures.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ailearn
