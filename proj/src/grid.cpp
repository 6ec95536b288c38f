#include "cascade/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cascade {

GridSpec GridSpec::make(double x_max, double h) {
    if (!(x_max >= 0.0) || !std::isfinite(x_max))
        throw std::invalid_argument("GridSpec: x_max must be finite and >= 0");
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("GridSpec: h must be finite and > 0");
    GridSpec s;
    s.x_max = x_max;
    s.h = h;
    // Nudge before flooring so x_max/h that lands a hair under an integer
    // still picks up the intended point.
    s.count = static_cast<std::size_t>(std::floor(x_max / h + 1e-9)) + 1;
    if (s.count < 2) s.count = 2;
    return s;
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.count)
        throw std::invalid_argument("GridFunction: values length " +
                                    std::to_string(values_.size()) +
                                    " does not match spec count " +
                                    std::to_string(spec_.count));
}

double GridFunction::interpolate(double x) const {
    const double last = spec_.last_x();
    const double slack = 1e-9 * std::max(1.0, last);
    if (x < -slack || x > last + slack)
        throw GridDomainError("interpolate: x = " + std::to_string(x) +
                              " outside [0, " + std::to_string(last) + "]");
    x = std::clamp(x, 0.0, last);
    const double s = x / spec_.h;
    const double r = std::round(s);
    // Snap to grid nodes so resampling at a node reproduces the stored value.
    if (std::abs(s - r) < 1e-9 && r >= 0.0 && r < static_cast<double>(values_.size()))
        return values_[static_cast<std::size_t>(r)];
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= values_.size() - 1) i = values_.size() - 2;
    const double t = s - static_cast<double>(i);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

bool GridFunction::is_probability_profile(double tol) const {
    if (std::abs(values_.front() - 1.0) > tol) return false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < -tol || values_[i] > 1.0 + tol) return false;
        if (i > 0 && values_[i] > values_[i - 1] + tol) return false;
    }
    return true;
}

GridFunction cumulative_integral(const GridFunction& f) {
    std::vector<double> c(f.size());
    c[0] = 0.0;
    const double half_h = 0.5 * f.spec().h;
    double acc = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        acc += half_h * (f[i - 1] + f[i]);
        c[i] = acc;
    }
    return GridFunction(f.spec(), std::move(c));
}

double find_crossing(const GridFunction& f, double level) {
    const std::size_t n = f.size();
    if (!(f[0] > level) || !(level > f[n - 1]))
        throw NoCrossingError("find_crossing: level " + std::to_string(level) +
                              " outside (" + std::to_string(f[n - 1]) + ", " +
                              std::to_string(f[0]) + ")");
    // First index with f[i] <= level (f is non-increasing).
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (f[mid] <= level)
            hi = mid;
        else
            lo = mid;
    }
    const double t = (f[lo] - level) / (f[lo] - f[hi]);
    return f.x(lo) + t * f.spec().h;
}

GridFunction resample_shifted(const GridFunction& f, double shift, Interval window) {
    if (!(window.lo <= window.hi))
        throw GridDomainError("resample_shifted: empty window");
    const double last = f.spec().last_x();
    const double slack = 1e-9 * std::max(1.0, last);
    if (window.lo + shift < -slack || window.hi + shift > last + slack)
        throw GridDomainError("resample_shifted: window [" + std::to_string(window.lo) +
                              ", " + std::to_string(window.hi) + "] + shift " +
                              std::to_string(shift) + " exceeds domain [0, " +
                              std::to_string(last) + "]");
    GridSpec out_spec = GridSpec::make(window.hi - window.lo, f.spec().h);
    std::vector<double> v(out_spec.count);
    for (std::size_t i = 0; i < out_spec.count; ++i) {
        double x = window.lo + out_spec.x(i) + shift;
        v[i] = f.interpolate(std::clamp(x, 0.0, last));
    }
    return GridFunction(out_spec, std::move(v));
}

}  // namespace cascade
