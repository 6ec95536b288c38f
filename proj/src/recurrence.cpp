#include "cascade/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cascade {

GridFunction seed_p0(const GridSpec& spec) {
    return GridFunction::tabulate(spec, [](double x) { return std::exp(-x); });
}

GridFunction step(const GridFunction& p_prev) {
    const GridFunction c = cumulative_integral(p_prev);
    std::vector<double> out(p_prev.size());
    for (std::size_t i = 0; i < p_prev.size(); ++i) {
        double v = std::exp(-p_prev.x(i) + c[i]);
        if (v > 1.0) v = 1.0;
        if (v < 1e-300) v = 0.0;
        out[i] = v;
    }
    return GridFunction(p_prev.spec(), std::move(out));
}

double closed_form_p1(double x) { return std::exp(-x + 1.0 - std::exp(-x)); }

RecurrenceRun run(int n_max, const RunOptions& opts) {
    if (n_max < 1) throw std::invalid_argument("run: n_max must be >= 1");
    if (!(opts.front_level > 0.0 && opts.front_level < 1.0))
        throw std::invalid_argument("run: front level must lie in (0,1)");

    const double x_max = static_cast<double>(n_max) / std::exp(1.0) + opts.tail_margin;
    const GridSpec spec = GridSpec::make(x_max, opts.h);
    if (spec.count > opts.max_points)
        throw BudgetError("run: grid would need " + std::to_string(spec.count) +
                          " points, budget is " + std::to_string(opts.max_points));

    RecurrenceRun result;
    result.spec = spec;
    result.n_max = n_max;
    result.front_level = opts.front_level;
    result.fronts.reserve(static_cast<std::size_t>(n_max) + 1);
    result.height_sum.assign(spec.count, 0.0);

    const auto keep = [&opts](int n) {
        return std::find(opts.store.begin(), opts.store.end(), n) != opts.store.end();
    };

    GridFunction p = seed_p0(spec);
    result.fronts.push_back(find_crossing(p, opts.front_level));
    for (std::size_t i = 0; i < spec.count; ++i) result.height_sum[i] += 1.0 - p[i];
    if (keep(0)) result.profiles.emplace(0, p);

    for (int n = 1; n <= n_max; ++n) {
        p = step(p);
        result.fronts.push_back(find_crossing(p, opts.front_level));
        for (std::size_t i = 0; i < spec.count; ++i) result.height_sum[i] += 1.0 - p[i];
        if (keep(n)) result.profiles.emplace(n, p);
    }

    result.final_residual.resize(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) result.final_residual[i] = 1.0 - p[i];
    return result;
}

double mean_height(double x, const RecurrenceRun& run) {
    const GridFunction residual(run.spec, std::vector<double>(run.final_residual));
    const double r = residual.interpolate(x);
    if (!(r < kMeanHeightTolerance))
        throw NotConvergedError("mean_height: 1 - P_n_max(" + std::to_string(x) +
                                    ") = " + std::to_string(r) +
                                    " has not fallen below the tail tolerance; "
                                    "increase n_max",
                                r);
    const GridFunction sum(run.spec, std::vector<double>(run.height_sum));
    return sum.interpolate(x);
}

}  // namespace cascade
