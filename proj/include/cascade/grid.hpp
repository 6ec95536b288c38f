#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cascade/errors.hpp"

namespace cascade {

// Uniform grid over [0, x_max]: point i sits at x = i*h.
struct GridSpec {
    double x_max = 0.0;
    double h = 0.0;
    std::size_t count = 0;  // floor(x_max/h) + 1

    static GridSpec make(double x_max, double h);

    double x(std::size_t i) const { return static_cast<double>(i) * h; }
    double last_x() const { return x(count - 1); }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Real-valued function tabulated on a uniform grid. Immutable after
// construction; cheap to copy, safe to share across threads.
class GridFunction {
  public:
    GridFunction(GridSpec spec, std::vector<double> values);

    template <class F>
    static GridFunction tabulate(GridSpec spec, F&& f) {
        std::vector<double> v(spec.count);
        for (std::size_t i = 0; i < spec.count; ++i) v[i] = f(spec.x(i));
        return GridFunction(spec, std::move(v));
    }

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return values_.size(); }
    double x(std::size_t i) const { return spec_.x(i); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    // Linear interpolation; x must lie in [0, last_x] up to rounding slack.
    double interpolate(double x) const;

    // True if the values form a valid height CDF profile: value 1 at x=0,
    // everything in [0,1], non-increasing in x.
    bool is_probability_profile(double tol = 1e-12) const;

  private:
    GridSpec spec_;
    std::vector<double> values_;
};

// Trapezoid prefix sum: C(0)=0, C(x_i) = integral of f over [0, x_i].
// Exact for affine data; preserves f <= 1 => C(x) <= x.
GridFunction cumulative_integral(const GridFunction& f);

// Unique x where the linear interpolant of a non-increasing f equals
// `level`. Requires f(0) > level > f(last_x); throws NoCrossingError
// otherwise.
double find_crossing(const GridFunction& f, double level);

// Values of f(xi + shift) tabulated on a fresh grid over `window` with the
// same spacing as f. Output point i corresponds to xi = window.lo + i*h.
// Requires window contained in [-shift, x_max - shift].
GridFunction resample_shifted(const GridFunction& f, double shift, Interval window);

}  // namespace cascade
