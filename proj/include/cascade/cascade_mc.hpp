#pragma once

#include <cstdint>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/rng.hpp"

namespace cascade::mc {

struct McOptions {
    int threads = 1;
    std::uint64_t node_cap = 100'000'000;  // hard per-tree abort, never truncation
};

// Per-realization summary of one cascade tree.
struct TreeStats {
    std::uint64_t size = 1;            // vertices, root included
    int height = 0;                    // longest root path, in links
    std::uint64_t terminal_count = 1;  // vertices with no offspring
};

// Samples one cascade tree on [0, x]: a node at position y spawns
// Poisson(x - y) children at i.i.d. uniform positions in (y, x]. Explicit
// work stack; only counters are kept, never the topology. Throws
// BudgetError if the tree exceeds node_cap (expected size is e^x).
TreeStats sample_tree(double x, SeedStream seeds, std::uint64_t node_cap = 100'000'000);

struct HeightCdfPoint {
    int n = 0;
    double prob = 0.0;       // empirical Prob(H <= n)
    double std_error = 0.0;  // binomial
    std::uint64_t cumulative_count = 0;
};

struct HeightCdf {
    double x = 0.0;
    std::uint64_t replicates = 0;
    std::vector<HeightCdfPoint> points;  // n = 0 .. max observed height
    double mean_height = 0.0;
    double mean_height_se = 0.0;
    double mean_size = 0.0;
    double mean_size_se = 0.0;
    double single_node_fraction = 0.0;  // empirical Prob(H = 0)
    double mean_terminals = 0.0;
};

// Empirical height CDF over independent replicates. Aborts (propagating
// BudgetError) if any replicate trips the node cap: a censored replicate
// would bias the CDF.
HeightCdf height_cdf(double x, std::uint64_t replicates, std::uint64_t master_seed,
                     const McOptions& opts = {});

// Tree sizes for replicates 0..replicates-1, index = replicate.
std::vector<std::uint64_t> size_sample(double x, std::uint64_t replicates,
                                       std::uint64_t master_seed, const McOptions& opts = {});

// One realization of the discrete cascade graph on vertices 0..m with link
// probability c for every ordered pair i < j.
struct DiscreteGraphStats {
    int m = 0;
    double c = 0.0;
    std::uint64_t reach_size = 1;  // vertices reachable from 0, including 0
    int longest_from_0 = 0;        // links on the longest path from vertex 0
    double no_out_fraction = 0.0;  // over all m+1 vertices
    double no_in_fraction = 0.0;
    double neutral_fraction = 0.0;  // neither in- nor out-links
};

DiscreteGraphStats sample_discrete(int m, double c, SeedStream seeds);

struct DiscreteEnsembleStats {
    int m = 0;
    double c = 0.0;
    std::uint64_t replicates = 0;
    double mean_reach_size = 0.0, reach_size_se = 0.0;
    double mean_longest = 0.0, longest_se = 0.0;
    double no_out_fraction = 0.0, no_out_se = 0.0;
    double no_in_fraction = 0.0, no_in_se = 0.0;
    double neutral_fraction = 0.0, neutral_se = 0.0;
};

DiscreteEnsembleStats sample_discrete_ensemble(int m, double c, std::uint64_t replicates,
                                               std::uint64_t master_seed,
                                               const McOptions& opts = {});

// Mean fraction of vertices with neither in- nor out-links; approaches
// e^{-cm} for large m at fixed cm.
double neutral_fraction_check(int m, double c, std::uint64_t replicates,
                              std::uint64_t master_seed, const McOptions& opts = {});

}  // namespace cascade::mc
