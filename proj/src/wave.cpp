#include "cascade/wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace cascade::wave {

namespace {

// Solve the 3x3 (or 2x2) normal equations by Gaussian elimination with
// partial pivoting. Small fixed sizes; no linear-algebra dependency needed.
template <int K>
std::array<double, K> solve_normal(std::array<std::array<double, K>, K> ata,
                                   std::array<double, K> atb) {
    for (int col = 0; col < K; ++col) {
        int pivot = col;
        for (int r = col + 1; r < K; ++r)
            if (std::abs(ata[r][col]) > std::abs(ata[pivot][col])) pivot = r;
        if (std::abs(ata[pivot][col]) < 1e-14)
            throw FitError("fit: singular normal equations");
        std::swap(ata[col], ata[pivot]);
        std::swap(atb[col], atb[pivot]);
        for (int r = col + 1; r < K; ++r) {
            const double f = ata[r][col] / ata[col][col];
            for (int c = col; c < K; ++c) ata[r][c] -= f * ata[col][c];
            atb[r] -= f * atb[col];
        }
    }
    std::array<double, K> x{};
    for (int r = K - 1; r >= 0; --r) {
        double s = atb[r];
        for (int c = r + 1; c < K; ++c) s -= ata[r][c] * x[c];
        x[r] = s / ata[r][r];
    }
    return x;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2) throw FitError("fit_line: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double nn = static_cast<double>(n);
    const double den = nn * sxx - sx * sx;
    if (std::abs(den) < 1e-14) throw FitError("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = (nn * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / nn;
    const double ss_tot = syy - sy * sy / nn;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (f.slope * xs[i] + f.intercept);
        ss_res += r * r;
    }
    f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

double dispersion_lhs(double a, double v) { return a * std::exp(-a * v); }

double bisect(double lo, double hi, double target, double v, bool increasing) {
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const bool above = dispersion_lhs(mid, v) > target;
        if (above == increasing)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

FrontTrace trace_from_run(const RecurrenceRun& run) {
    FrontTrace t;
    t.n.resize(run.fronts.size());
    for (std::size_t i = 0; i < run.fronts.size(); ++i) t.n[i] = static_cast<int>(i);
    t.x_f = run.fronts;
    return t;
}

VelocityFit fit_velocity(const FrontTrace& trace, int window_lo, int window_hi,
                         bool with_log) {
    if (window_hi - window_lo + 1 < 10)
        throw FitError("fit_velocity: window must span at least 10 points");

    std::vector<double> ns, xs;
    for (std::size_t i = 0; i < trace.n.size(); ++i) {
        if (trace.n[i] >= window_lo && trace.n[i] <= window_hi && trace.n[i] >= 1) {
            ns.push_back(static_cast<double>(trace.n[i]));
            xs.push_back(trace.x_f[i]);
        }
    }
    if (ns.size() < 10) throw FitError("fit_velocity: fewer than 10 trace points in window");

    VelocityFit fit;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    fit.with_log = with_log;

    if (with_log) {
        std::array<std::array<double, 3>, 3> ata{};
        std::array<double, 3> atb{};
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const std::array<double, 3> row{ns[i], std::log(ns[i]), 1.0};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) ata[r][c] += row[r] * row[c];
                atb[r] += row[r] * xs[i];
            }
        }
        const auto sol = solve_normal<3>(ata, atb);
        fit.v = sol[0];
        fit.b = sol[1];
        fit.c0 = sol[2];
    } else {
        std::array<std::array<double, 2>, 2> ata{};
        std::array<double, 2> atb{};
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const std::array<double, 2> row{ns[i], 1.0};
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) ata[r][c] += row[r] * row[c];
                atb[r] += row[r] * xs[i];
            }
        }
        const auto sol = solve_normal<2>(ata, atb);
        fit.v = sol[0];
        fit.b = 0.0;
        fit.c0 = sol[1];
    }

    double ss = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double model = fit.v * ns[i] + fit.b * std::log(ns[i]) + fit.c0;
        ss += (xs[i] - model) * (xs[i] - model);
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(ns.size()));
    return fit;
}

DispersionSolution dispersion_roots(double v) {
    if (!(v > 0.0)) throw std::invalid_argument("dispersion_roots: v must be > 0");
    DispersionSolution sol;
    sol.v = v;
    const double a_peak = 1.0 / v;
    const double f_max = dispersion_lhs(a_peak, v);  // = e^{-1}/v
    if (std::abs(f_max - 1.0) <= 1e-9) {
        sol.roots.push_back(a_peak);
        return sol;
    }
    if (f_max < 1.0) return sol;
    // rising branch on (0, 1/v), falling branch on (1/v, inf)
    sol.roots.push_back(bisect(1e-300, a_peak, 1.0, v, true));
    double hi = 2.0 * a_peak;
    while (dispersion_lhs(hi, v) > 1.0) hi *= 2.0;
    sol.roots.push_back(bisect(a_peak, hi, 1.0, v, false));
    return sol;
}

SelectedVelocity selected_velocity() {
    // v(a) = ln(a)/a peaks where 1 - ln(a) = 0; bisect that derivative root.
    double lo = 1.0, hi = 10.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (1.0 - std::log(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    SelectedVelocity s;
    s.a = 0.5 * (lo + hi);
    s.v = std::log(s.a) / s.a;
    return s;
}

WaveProfile extract_profile(const GridFunction& p_n, int n, double level, double half_width) {
    const double x_f = find_crossing(p_n, level);
    const double last = p_n.spec().last_x();
    if (x_f < half_width || last - x_f < half_width)
        throw GridDomainError("extract_profile: need " + std::to_string(half_width) +
                              " units of domain on each side of the front at x = " +
                              std::to_string(x_f));

    WaveProfile prof{resample_shifted(p_n, x_f, Interval{-half_width, half_width})};
    prof.xi_lo = -half_width;
    prof.xi_hi = half_width;
    prof.x_front = x_f;
    prof.n = n;
    prof.level = level;

    const GridFunction& pi = prof.pi;
    const double h = pi.spec().h;
    const std::size_t i0 = static_cast<std::size_t>(std::llround(half_width / h));
    double l = 0.0;
    for (std::size_t i = 0; i < i0; ++i)
        l += 0.5 * h * ((1.0 - pi[i]) + (1.0 - pi[i + 1]));
    double r = 0.0;
    for (std::size_t i = i0; i + 1 < pi.size(); ++i) r += 0.5 * h * (pi[i] + pi[i + 1]);
    prof.l_integral = l;
    prof.r_integral = r;
    // Tail laws: 1-Pi ~ D e^{e xi} behind, Pi ~ C e^{-xi} ahead.
    prof.l_tail_correction = (1.0 - pi[0]) / std::exp(1.0);
    prof.r_tail_correction = pi[pi.size() - 1];
    return prof;
}

TailFit tail_fit(const WaveProfile& profile, TailSide side) {
    return side == TailSide::ahead ? tail_fit(profile, side, 5.0, 15.0)
                                   : tail_fit(profile, side, -5.0, -1.5);
}

TailFit tail_fit(const WaveProfile& profile, TailSide side, double lo, double hi) {
    const GridFunction& pi = profile.pi;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double xi = profile.xi_lo + pi.x(i);
        if (xi < lo || xi > hi) continue;
        const double val = side == TailSide::ahead ? pi[i] : 1.0 - pi[i];
        if (val <= kTailNoiseFloor) continue;
        xs.push_back(xi);
        ys.push_back(std::log(val));
    }
    if (xs.size() < 2) throw FitError("tail_fit: no usable points above the noise floor");
    const LineFit line = fit_line(xs, ys);
    TailFit f;
    f.side = side;
    f.slope = line.slope;
    f.intercept = line.intercept;
    f.window_lo = lo;
    f.window_hi = hi;
    f.r_squared = line.r_squared;
    return f;
}

double wave_equation_residual(const WaveProfile& profile, double v) {
    const GridFunction& pi = profile.pi;
    const double h = pi.spec().h;
    const std::size_t i0 = static_cast<std::size_t>(std::llround(-profile.xi_lo / h));

    // Prefix trapezoid of Pi from the window start, rebased at xi = 0.
    std::vector<double> prefix(pi.size(), 0.0);
    for (std::size_t i = 1; i < pi.size(); ++i)
        prefix[i] = prefix[i - 1] + 0.5 * h * (pi[i - 1] + pi[i]);
    const double at_zero = prefix[i0];

    const double interior = 15.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double xi = profile.xi_lo + pi.x(i);
        if (xi < std::max(-interior, profile.xi_lo + v) || xi > interior) continue;
        const double lhs = profile.pi_at(xi - v);
        const double rhs = std::exp(-xi - profile.l_integral + (prefix[i] - at_zero));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace cascade::wave
