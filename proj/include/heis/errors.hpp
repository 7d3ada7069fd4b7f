#pragma once

#include <stdexcept>
#include <string>

namespace heis {

// Malformed parameters or requests (CLI exit status 1).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Work or memory budget exceeded (CLI exit status 1).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two independent routes disagree: fast vs brute, grouped vs direct,
// Beta form vs quadrature (CLI exit status 2).
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace heis
