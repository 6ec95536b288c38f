#include "cascade/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade::mc {

namespace {

int poisson_inversion(Xoshiro256ss& rng, double mean) {
    const double u = rng.next_double();
    double p = std::exp(-mean);
    double cdf = p;
    int k = 0;
    // cdf can saturate just below the largest representable u; the count
    // guard keeps that pathological branch finite (P(k > bound) < 1e-40).
    const int bound = 40 + static_cast<int>(12.0 * mean);
    while (u > cdf && k < bound) {
        ++k;
        p *= mean / k;
        cdf += p;
    }
    return k;
}

// Hoermann's PTRS transformed-rejection sampler, valid for mean >= 10.
int poisson_ptrs(Xoshiro256ss& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::abs(u);
        const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<int>(kd);
        if (kd < 0.0 || (us < 0.013 && v > us)) continue;
        const double k = kd;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0))
            return static_cast<int>(kd);
    }
}

}  // namespace

int poisson(Xoshiro256ss& rng, double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 10.0) return poisson_inversion(rng, mean);
    return poisson_ptrs(rng, mean);
}

}  // namespace cascade::mc
