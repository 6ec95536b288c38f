#pragma once

#include <vector>

#include "cascade/grid.hpp"
#include "cascade/recurrence.hpp"

namespace cascade::wave {

struct FrontTrace {
    std::vector<int> n;
    std::vector<double> x_f;  // strictly increasing in n
};

FrontTrace trace_from_run(const RecurrenceRun& run);

// Least-squares model x_f(n) = v*n + b*ln(n) + c0 (b fixed to 0 when the
// log term is disabled).
struct VelocityFit {
    double v = 0.0;
    double b = 0.0;
    double c0 = 0.0;
    double residual_rms = 0.0;
    int window_lo = 0;
    int window_hi = 0;
    bool with_log = true;
};

VelocityFit fit_velocity(const FrontTrace& trace, int window_lo, int window_hi,
                         bool with_log = true);

// Roots of the dispersion relation a e^{-a v} = 1. Two roots for v < 1/e,
// a double root at v = 1/e, none for v > 1/e.
struct DispersionSolution {
    double v = 0.0;
    std::vector<double> roots;  // ascending; 0, 1 or 2 entries
};

DispersionSolution dispersion_roots(double v);

// The selected front velocity: the extremum of v(a) = ln(a)/a over a > 0,
// located via the root of its derivative. Returns (1/e, e) to 1e-9.
struct SelectedVelocity {
    double v = 0.0;
    double a = 0.0;
};

SelectedVelocity selected_velocity();

// Front-centered profile Pi(xi) = P_n(x_f + xi) on xi in [-half_width,
// half_width], with the window-truncated integrals
//   L = integral_{-W}^{0} (1 - Pi),  R = integral_{0}^{W} Pi
// and analytic tail-bound corrections reported separately (never added).
struct WaveProfile {
    GridFunction pi;
    double xi_lo = 0.0;
    double xi_hi = 0.0;
    double x_front = 0.0;
    int n = 0;
    double level = 0.5;
    double l_integral = 0.0;
    double r_integral = 0.0;
    double l_tail_correction = 0.0;  // bound on the mass of 1-Pi left of the window
    double r_tail_correction = 0.0;  // bound on the mass of Pi right of the window

    double pi_at(double xi) const { return pi.interpolate(xi - xi_lo); }
};

WaveProfile extract_profile(const GridFunction& p_n, int n, double level = 0.5,
                            double half_width = 20.0);

enum class TailSide { ahead, behind };

// Log-tail fit: ln Pi against xi ahead of the front (slope -> -1), or
// ln(1 - Pi) behind it (slope -> e). Default windows [5,15] and [-5,-1.5].
struct TailFit {
    TailSide side = TailSide::ahead;
    double slope = 0.0;
    double intercept = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double r_squared = 0.0;
};

TailFit tail_fit(const WaveProfile& profile, TailSide side);
TailFit tail_fit(const WaveProfile& profile, TailSide side, double lo, double hi);

// Sup-norm residual of the governing fixed-point equation
//   Pi(xi - v) = exp[-xi - L + integral_0^xi Pi]
// over the interior window |xi| <= 15. Small residual certifies that the
// extracted profile solves the wave equation at effective velocity v.
double wave_equation_residual(const WaveProfile& profile, double v);

inline constexpr double kTailNoiseFloor = 1e-12;

}  // namespace cascade::wave
