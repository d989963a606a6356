#pragma once

#include <stdexcept>
#include <string>

namespace wps {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad user-supplied parameters (window radius, delta <= 1, misaligned step, ...)
struct ParameterError : Error {
    using Error::Error;
};

// operands living on different grids
struct StructuralError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

struct UnsupportedError : Error {
    using Error::Error;
};

// boundary mass or norm drift exceeded a runtime guard
struct NumericalGuard : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace wps
