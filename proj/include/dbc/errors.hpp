#pragma once

#include <stdexcept>
#include <string>

namespace dbc {

// Bad argument or precondition violation (maps to CLI exit code 2).
struct param_error : std::runtime_error {
    explicit param_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested operation not available for this input dimension.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant (maps to CLI exit code 3).
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dbc
