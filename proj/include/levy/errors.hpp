#pragma once

#include <stdexcept>
#include <string>

namespace levy {

// Grid cannot represent the requested object (aliasing, sub-resolution time scales).
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expected work exceeds the configured budget.
struct CostGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::logic_error {
    using std::logic_error::logic_error;
};

// The model violates a nondegeneracy requirement on the chosen grid.
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace levy
