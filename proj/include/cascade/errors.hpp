#pragma once

#include <stdexcept>
#include <string>

namespace cascade {

// Level-crossing search failed: level outside the function's range.
struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested window or point lies outside the tabulated domain.
struct GridDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured budget (grid points, tree nodes) was exceeded. Hard abort,
// never silent truncation: truncated samples would bias the statistics.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative computation did not reach the requested tolerance.
struct NotConvergedError : std::runtime_error {
    NotConvergedError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual = 0.0;
};

// Least-squares fit could not be performed (degenerate window / no data).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cascade
