#pragma once

#include <map>
#include <vector>

#include "cascade/grid.hpp"

namespace cascade {

struct RunOptions {
    double h = 1e-3;
    double front_level = 0.5;     // any fixed level in (0,1) shifts x_f by a constant
    double tail_margin = 40.0;    // x_max = n_max/e + tail_margin
    std::size_t max_points = 100'000'000;
    std::vector<int> store;       // iteration indices whose profiles are kept
};

// Result of iterating the height-CDF recurrence n_max times. Immutable;
// profiles are stored only for the requested n, fronts for every n.
struct RecurrenceRun {
    GridSpec spec;
    int n_max = 0;
    double front_level = 0.5;
    std::map<int, GridFunction> profiles;
    std::vector<double> fronts;          // fronts[n] = x_f(n), n = 0..n_max
    std::vector<double> height_sum;      // sum over n of 1 - P_n(x_i)
    std::vector<double> final_residual;  // 1 - P_{n_max}(x_i)
};

// P_0(x) = e^{-x}: the root is terminal with probability e^{-x}.
GridFunction seed_p0(const GridSpec& spec);

// One recurrence step: P_n(x) = exp[-x + integral_0^x P_{n-1}(y) dy].
// Output is clamped to [0,1]; values below 1e-300 flush to zero.
GridFunction step(const GridFunction& p_prev);

// Closed form P_1(x) = exp[-x + 1 - e^{-x}]; reference oracle for step().
double closed_form_p1(double x);

// Iterate the recurrence n_max times on an auto-sized domain, recording the
// level crossing x_f(n) at every step and accumulating the mean-height sum.
RecurrenceRun run(int n_max, const RunOptions& opts = {});

// E[H(x)] = sum_{n>=0} [1 - P_n(x)], truncated once 1 - P_{n_max}(x) drops
// below 1e-12. Throws NotConvergedError (carrying the residual) otherwise.
double mean_height(double x, const RecurrenceRun& run);

inline constexpr double kMeanHeightTolerance = 1e-12;

}  // namespace cascade
