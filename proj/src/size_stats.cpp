#include "cascade/size_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade::stats {

double exact_moment(double x, int p) {
    if (!(x >= 0.0)) throw std::invalid_argument("exact_moment: x must be >= 0");
    switch (p) {
        case 1:
            return std::exp(x);
        case 2:
            return 2.0 * std::exp(2.0 * x) - std::exp(x);
        case 3:
            return 3.75 * std::exp(3.0 * x) - 2.75 * std::exp(x) - 1.5 * x * std::exp(x);
        default:
            throw std::invalid_argument("exact_moment: only p = 1,2,3 are exact");
    }
}

std::vector<SizeMomentReport> moments_from_sizes(double x, std::span<const std::uint64_t> sizes,
                                                 int p_max) {
    if (p_max < 1 || p_max > 5)
        throw std::invalid_argument("moments_from_sizes: p_max must lie in [1,5]");
    if (sizes.size() < 100)
        throw std::invalid_argument("moments_from_sizes: need at least 100 replicates");

    const double nn = static_cast<double>(sizes.size());
    // sums[q] = sum of S^q for q = 1..2*p_max (the variance of S^p needs S^{2p})
    std::vector<double> sums(static_cast<std::size_t>(2 * p_max) + 1, 0.0);
    for (const std::uint64_t s : sizes) {
        double pw = 1.0;
        for (int q = 1; q <= 2 * p_max; ++q) {
            pw *= static_cast<double>(s);
            sums[static_cast<std::size_t>(q)] += pw;
        }
    }

    std::vector<SizeMomentReport> out;
    for (int p = 1; p <= p_max; ++p) {
        SizeMomentReport r;
        r.x = x;
        r.p = p;
        r.replicates = sizes.size();
        r.estimate = sums[static_cast<std::size_t>(p)] / nn;
        const double m2 = sums[static_cast<std::size_t>(2 * p)] / nn;
        const double var = std::max(0.0, (m2 - r.estimate * r.estimate) * nn / (nn - 1.0));
        r.std_error = std::sqrt(var / nn);
        if (p <= 3) r.exact = exact_moment(x, p);
        out.push_back(r);
    }
    return out;
}

std::vector<SizeMomentReport> mc_moments(double x, std::uint64_t replicates,
                                         std::uint64_t master_seed, int p_max,
                                         const mc::McOptions& opts) {
    if (replicates < 100) throw std::invalid_argument("mc_moments: replicates must be >= 100");
    const auto sizes = mc::size_sample(x, replicates, master_seed, opts);
    return moments_from_sizes(x, sizes, p_max);
}

ScaledSizeReport scaled_report_from_sizes(double x, std::span<const std::uint64_t> sizes,
                                          int bins) {
    if (bins < 1) throw std::invalid_argument("scaled_report: bins must be >= 1");
    if (sizes.size() < 2 * kJackknifeBlock)
        throw std::invalid_argument("scaled_report: need at least two jackknife blocks");

    constexpr int kPMax = 5;
    const std::uint64_t n = sizes.size();
    const double nn = static_cast<double>(n);
    const double scale = std::exp(-x);

    ScaledSizeReport out;
    out.x = x;
    out.replicates = n;
    out.histogram.lo = 0.0;
    out.histogram.hi = 10.0;
    out.histogram.counts.assign(static_cast<std::size_t>(bins), 0);
    const double bin_w = (out.histogram.hi - out.histogram.lo) / bins;

    // Per-block power sums for the jackknife; final full blocks, remainder
    // folded into the last block.
    const std::uint64_t full_blocks = n / kJackknifeBlock;
    const std::uint64_t n_blocks = full_blocks;  // >= 2 by the guard above
    std::vector<std::vector<double>> block_sums(
        n_blocks, std::vector<double>(static_cast<std::size_t>(2 * kPMax) + 1, 0.0));
    std::vector<double> block_count(n_blocks, 0.0);

    for (std::uint64_t i = 0; i < n; ++i) {
        const double sigma = scale * static_cast<double>(sizes[i]);
        std::uint64_t b = i / kJackknifeBlock;
        if (b >= n_blocks) b = n_blocks - 1;
        double pw = 1.0;
        for (int q = 1; q <= 2 * kPMax; ++q) {
            pw *= sigma;
            block_sums[b][static_cast<std::size_t>(q)] += pw;
        }
        block_count[b] += 1.0;

        if (sigma >= out.histogram.hi) {
            ++out.histogram.overflow;
        } else {
            auto bin = static_cast<std::size_t>((sigma - out.histogram.lo) / bin_w);
            if (bin >= out.histogram.counts.size()) bin = out.histogram.counts.size() - 1;
            ++out.histogram.counts[bin];
        }
    }

    std::vector<double> total(static_cast<std::size_t>(2 * kPMax) + 1, 0.0);
    for (std::uint64_t b = 0; b < n_blocks; ++b)
        for (std::size_t q = 1; q < total.size(); ++q) total[q] += block_sums[b][q];

    out.sigma_mean = total[1] / nn;
    out.sigma_variance =
        std::max(0.0, (total[2] / nn - out.sigma_mean * out.sigma_mean) * nn / (nn - 1.0));

    for (int p = 1; p <= kPMax; ++p) {
        ScaledMoment m;
        m.p = p;
        m.estimate = total[static_cast<std::size_t>(p)] / nn;
        const double m2 = total[static_cast<std::size_t>(2 * p)] / nn;
        const double var = std::max(0.0, (m2 - m.estimate * m.estimate) * nn / (nn - 1.0));
        m.std_error = std::sqrt(var / nn);

        // Delete-one-block jackknife over the block means.
        double jsum = 0.0, jsum2 = 0.0;
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            const double est_wo =
                (total[static_cast<std::size_t>(p)] - block_sums[b][static_cast<std::size_t>(p)]) /
                (nn - block_count[b]);
            jsum += est_wo;
            jsum2 += est_wo * est_wo;
        }
        const double bb = static_cast<double>(n_blocks);
        const double jmean = jsum / bb;
        m.jackknife_se = std::sqrt(std::max(0.0, (bb - 1.0) / bb * (jsum2 - bb * jmean * jmean)));
        out.moments.push_back(m);
    }
    return out;
}

ScaledSizeReport scaled_distribution(double x, std::uint64_t replicates,
                                     std::uint64_t master_seed, int bins,
                                     const mc::McOptions& opts) {
    const auto sizes = mc::size_sample(x, replicates, master_seed, opts);
    return scaled_report_from_sizes(x, sizes, bins);
}

}  // namespace cascade::stats
