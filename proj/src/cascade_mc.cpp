#include "cascade/cascade_mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cascade/parallel.hpp"

namespace cascade::mc {

TreeStats sample_tree(double x, SeedStream seeds, std::uint64_t node_cap) {
    if (!(x >= 0.0)) throw std::invalid_argument("sample_tree: x must be >= 0");
    if (node_cap < 1) throw std::invalid_argument("sample_tree: node_cap must be >= 1");
    Xoshiro256ss rng(seeds);

    struct Frame {
        double pos;
        int depth;
    };
    std::vector<Frame> stack;
    stack.push_back({0.0, 0});

    std::uint64_t size = 0;
    std::uint64_t terminals = 0;
    int height = 0;
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (++size > node_cap)
            throw BudgetError("sample_tree: node cap " + std::to_string(node_cap) +
                              " exceeded at replicate " +
                              std::to_string(seeds.replicate_index));
        height = std::max(height, f.depth);
        const int k = poisson(rng, x - f.pos);
        if (k == 0) {
            ++terminals;
            continue;
        }
        for (int j = 0; j < k; ++j) {
            // uniform in (pos, x]: 1 - u maps [0,1) onto (0,1]
            const double child = f.pos + (x - f.pos) * (1.0 - rng.next_double());
            stack.push_back({child, f.depth + 1});
        }
    }
    return {size, height, terminals};
}

namespace {

struct TreeAccumulator {
    std::vector<std::uint64_t> height_counts;
    std::uint64_t n = 0;
    double sum_h = 0.0, sum_h2 = 0.0;
    double sum_s = 0.0, sum_s2 = 0.0;
    double sum_t = 0.0;
    std::uint64_t singles = 0;

    void add(const TreeStats& t) {
        const auto h = static_cast<std::size_t>(t.height);
        if (height_counts.size() <= h) height_counts.resize(h + 1, 0);
        ++height_counts[h];
        ++n;
        sum_h += t.height;
        sum_h2 += static_cast<double>(t.height) * t.height;
        sum_s += static_cast<double>(t.size);
        sum_s2 += static_cast<double>(t.size) * static_cast<double>(t.size);
        sum_t += static_cast<double>(t.terminal_count);
        if (t.size == 1) ++singles;
    }

    void merge(const TreeAccumulator& o) {
        if (height_counts.size() < o.height_counts.size())
            height_counts.resize(o.height_counts.size(), 0);
        for (std::size_t i = 0; i < o.height_counts.size(); ++i)
            height_counts[i] += o.height_counts[i];
        n += o.n;
        sum_h += o.sum_h;
        sum_h2 += o.sum_h2;
        sum_s += o.sum_s;
        sum_s2 += o.sum_s2;
        sum_t += o.sum_t;
        singles += o.singles;
    }
};

double mean_se(double sum, double sum_sq, std::uint64_t n) {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
    return std::sqrt(var / nn);
}

}  // namespace

HeightCdf height_cdf(double x, std::uint64_t replicates, std::uint64_t master_seed,
                     const McOptions& opts) {
    if (replicates < 1) throw std::invalid_argument("height_cdf: replicates must be >= 1");
    auto acc = run_replicates<TreeAccumulator>(
        replicates, opts.threads, [&](TreeAccumulator& a, std::uint64_t r) {
            a.add(sample_tree(x, SeedStream{master_seed, r}, opts.node_cap));
        });

    HeightCdf out;
    out.x = x;
    out.replicates = replicates;
    const double nn = static_cast<double>(replicates);
    std::uint64_t cum = 0;
    for (std::size_t h = 0; h < acc.height_counts.size(); ++h) {
        cum += acc.height_counts[h];
        const double p = static_cast<double>(cum) / nn;
        HeightCdfPoint pt;
        pt.n = static_cast<int>(h);
        pt.prob = p;
        pt.std_error = std::sqrt(std::max(0.0, p * (1.0 - p) / nn));
        pt.cumulative_count = cum;
        out.points.push_back(pt);
    }
    out.mean_height = acc.sum_h / nn;
    out.mean_height_se = mean_se(acc.sum_h, acc.sum_h2, replicates);
    out.mean_size = acc.sum_s / nn;
    out.mean_size_se = mean_se(acc.sum_s, acc.sum_s2, replicates);
    out.single_node_fraction = static_cast<double>(acc.singles) / nn;
    out.mean_terminals = acc.sum_t / nn;
    return out;
}

std::vector<std::uint64_t> size_sample(double x, std::uint64_t replicates,
                                       std::uint64_t master_seed, const McOptions& opts) {
    if (replicates < 1) throw std::invalid_argument("size_sample: replicates must be >= 1");
    std::vector<std::uint64_t> sizes(replicates);
    struct Nothing {
        void merge(const Nothing&) {}
    };
    run_replicates<Nothing>(replicates, opts.threads, [&](Nothing&, std::uint64_t r) {
        sizes[r] = sample_tree(x, SeedStream{master_seed, r}, opts.node_cap).size;
    });
    return sizes;
}

DiscreteGraphStats sample_discrete(int m, double c, SeedStream seeds) {
    if (m < 1) throw std::invalid_argument("sample_discrete: m must be >= 1");
    if (!(c >= 0.0 && c <= 1.0))
        throw std::invalid_argument("sample_discrete: c must lie in [0,1]");
    Xoshiro256ss rng(seeds);

    const std::size_t n = static_cast<std::size_t>(m) + 1;
    constexpr int kUnreachable = -1;
    std::vector<int> dist(n, kUnreachable);
    dist[0] = 0;
    std::vector<std::uint8_t> has_out(n, 0), has_in(n, 0);

    if (c > 0.0) {
        const bool all = (c == 1.0);
        const double log1mc = all ? 0.0 : std::log1p(-c);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t j = i;
            while (true) {
                if (all) {
                    ++j;
                } else {
                    // geometric skip: each j in (i, m] linked independently
                    const double skip = std::floor(std::log1p(-rng.next_double()) / log1mc);
                    if (skip >= static_cast<double>(n)) break;
                    j += 1 + static_cast<std::size_t>(skip);
                }
                if (j >= n) break;
                has_out[i] = 1;
                has_in[j] = 1;
                if (dist[i] >= 0 && dist[i] + 1 > dist[j]) dist[j] = dist[i] + 1;
            }
        }
    }

    DiscreteGraphStats out;
    out.m = m;
    out.c = c;
    std::uint64_t reach = 0, no_out = 0, no_in = 0, neutral = 0;
    int longest = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] >= 0) {
            ++reach;
            longest = std::max(longest, dist[v]);
        }
        if (!has_out[v]) ++no_out;
        if (!has_in[v]) ++no_in;
        if (!has_out[v] && !has_in[v]) ++neutral;
    }
    const double nn = static_cast<double>(n);
    out.reach_size = reach;
    out.longest_from_0 = longest;
    out.no_out_fraction = static_cast<double>(no_out) / nn;
    out.no_in_fraction = static_cast<double>(no_in) / nn;
    out.neutral_fraction = static_cast<double>(neutral) / nn;
    return out;
}

DiscreteEnsembleStats sample_discrete_ensemble(int m, double c, std::uint64_t replicates,
                                               std::uint64_t master_seed,
                                               const McOptions& opts) {
    if (replicates < 1)
        throw std::invalid_argument("sample_discrete_ensemble: replicates must be >= 1");
    struct Acc {
        double reach = 0, reach2 = 0;
        double lng = 0, lng2 = 0;
        double no_out = 0, no_out2 = 0;
        double no_in = 0, no_in2 = 0;
        double neu = 0, neu2 = 0;
        void merge(const Acc& o) {
            reach += o.reach;
            reach2 += o.reach2;
            lng += o.lng;
            lng2 += o.lng2;
            no_out += o.no_out;
            no_out2 += o.no_out2;
            no_in += o.no_in;
            no_in2 += o.no_in2;
            neu += o.neu;
            neu2 += o.neu2;
        }
    };
    auto acc = run_replicates<Acc>(replicates, opts.threads, [&](Acc& a, std::uint64_t r) {
        const DiscreteGraphStats g = sample_discrete(m, c, SeedStream{master_seed, r});
        const double rs = static_cast<double>(g.reach_size);
        const double lg = static_cast<double>(g.longest_from_0);
        a.reach += rs;
        a.reach2 += rs * rs;
        a.lng += lg;
        a.lng2 += lg * lg;
        a.no_out += g.no_out_fraction;
        a.no_out2 += g.no_out_fraction * g.no_out_fraction;
        a.no_in += g.no_in_fraction;
        a.no_in2 += g.no_in_fraction * g.no_in_fraction;
        a.neu += g.neutral_fraction;
        a.neu2 += g.neutral_fraction * g.neutral_fraction;
    });

    DiscreteEnsembleStats out;
    out.m = m;
    out.c = c;
    out.replicates = replicates;
    const double nn = static_cast<double>(replicates);
    out.mean_reach_size = acc.reach / nn;
    out.reach_size_se = mean_se(acc.reach, acc.reach2, replicates);
    out.mean_longest = acc.lng / nn;
    out.longest_se = mean_se(acc.lng, acc.lng2, replicates);
    out.no_out_fraction = acc.no_out / nn;
    out.no_out_se = mean_se(acc.no_out, acc.no_out2, replicates);
    out.no_in_fraction = acc.no_in / nn;
    out.no_in_se = mean_se(acc.no_in, acc.no_in2, replicates);
    out.neutral_fraction = acc.neu / nn;
    out.neutral_se = mean_se(acc.neu, acc.neu2, replicates);
    return out;
}

double neutral_fraction_check(int m, double c, std::uint64_t replicates,
                              std::uint64_t master_seed, const McOptions& opts) {
    return sample_discrete_ensemble(m, c, replicates, master_seed, opts).neutral_fraction;
}

}  // namespace cascade::mc
