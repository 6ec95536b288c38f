#pragma once

#include <cstdint>

namespace cascade::mc {

// Identifies one replicate's random substream. Distinct replicate indices
// give independent streams; the same pair always reproduces the same
// samples bit-exactly, regardless of which worker runs the replicate.
struct SeedStream {
    std::uint64_t master_seed = 0;
    std::uint64_t replicate_index = 0;
};

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** keyed by a splitmix64 expansion of (master_seed, replicate).
class Xoshiro256ss {
  public:
    explicit Xoshiro256ss(SeedStream seeds) {
        // Counter-based stream derivation: fold the replicate counter into
        // the master key through the splitmix finalizer, then expand.
        std::uint64_t key = seeds.master_seed;
        std::uint64_t c = seeds.replicate_index;
        key ^= splitmix64_next(c) + 0x9E3779B97F4A7C15ULL * seeds.replicate_index;
        s_[0] = splitmix64_next(key);
        s_[1] = splitmix64_next(key);
        s_[2] = splitmix64_next(key);
        s_[3] = splitmix64_next(key);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Exact Poisson sample with the given mean: sequential inversion below
// mean 10, transformed rejection (PTRS) above. Both have exact marginals.
int poisson(Xoshiro256ss& rng, double mean);

}  // namespace cascade::mc
