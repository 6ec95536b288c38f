#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cascade/cascade_mc.hpp"

namespace cascade::stats {

// Exact <S^p(x)> for p = 1,2,3:
//   <S>   = e^x
//   <S^2> = 2e^{2x} - e^x
//   <S^3> = (15/4)e^{3x} - (11/4)e^x - (3/2)x e^x
double exact_moment(double x, int p);

struct SizeMomentReport {
    double x = 0.0;
    int p = 0;
    std::optional<double> exact;  // present iff p in {1,2,3}
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t replicates = 0;
};

// Sample raw moments <S^p> for p = 1..p_max with standard errors of the
// sample mean of S^p.
std::vector<SizeMomentReport> moments_from_sizes(double x, std::span<const std::uint64_t> sizes,
                                                 int p_max);

std::vector<SizeMomentReport> mc_moments(double x, std::uint64_t replicates,
                                         std::uint64_t master_seed, int p_max,
                                         const mc::McOptions& opts = {});

struct ScaledMoment {
    int p = 0;
    double estimate = 0.0;
    double std_error = 0.0;     // SE of the sample mean of sigma^p
    double jackknife_se = 0.0;  // delete-one-block jackknife, blocks of 100
};

struct SigmaHistogram {
    double lo = 0.0;
    double hi = 10.0;
    std::vector<std::uint64_t> counts;  // uniform bins on [lo, hi)
    std::uint64_t overflow = 0;         // sigma >= hi
};

struct ScaledSizeReport {
    double x = 0.0;
    std::uint64_t replicates = 0;
    std::vector<ScaledMoment> moments;  // p = 1..5 (M_0 = 1 by normalization)
    SigmaHistogram histogram;
    double sigma_mean = 0.0;
    double sigma_variance = 0.0;
};

// Scaled size sigma = e^{-x} S: histogram plus limiting-distribution moment
// estimates M_1..M_5. Meaningful for x >= 4 where finite-x corrections to
// the low moments drop below 1e-2.
ScaledSizeReport scaled_distribution(double x, std::uint64_t replicates,
                                     std::uint64_t master_seed, int bins = 200,
                                     const mc::McOptions& opts = {});

ScaledSizeReport scaled_report_from_sizes(double x, std::span<const std::uint64_t> sizes,
                                          int bins = 200);

inline constexpr std::uint64_t kJackknifeBlock = 100;

}  // namespace cascade::stats
