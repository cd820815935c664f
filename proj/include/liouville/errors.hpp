#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Invalid configuration or precondition violation (CLI exit code 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: non-convergence, singular systems (CLI exit code 2).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace liouville
