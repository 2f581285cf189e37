#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace invopt {

// Daily demand is a pure function of (seed, replication, product, day): the
// four words are folded through a SplitMix64 avalanche chain, the mixed word
// yields two 32-bit uniforms, and a Box-Muller transform produces one normal
// draw. That draw is clamped at zero and rounded half-up to whole units.
// Because no generator state is carried between calls, any evaluation order
// (or thread schedule) sees identical demand.
struct DemandStream {
    std::uint64_t seed = 0;
    int product_index = 0;
    int replication = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

namespace rng_detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_key(std::uint64_t seed, int replication, int product,
                                int day) {
    std::uint64_t k = mix64(seed);
    k = mix64(k ^ static_cast<std::uint64_t>(replication));
    k = mix64(k ^ static_cast<std::uint64_t>(product));
    k = mix64(k ^ static_cast<std::uint64_t>(day));
    return k;
}

inline double standard_normal(std::uint64_t key) {
    // High word in (0,1] keeps the log argument positive.
    const double u1 = (static_cast<double>(key >> 32) + 1.0) * 0x1p-32;
    const double u2 = static_cast<double>(key & 0xffffffffull) * 0x1p-32;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace rng_detail

inline int sample_day(const DemandStream& s, int day) {
    double v = s.mean;
    if (s.stddev > 0.0) {
        const std::uint64_t key =
            rng_detail::stream_key(s.seed, s.replication, s.product_index, day);
        v += s.stddev * rng_detail::standard_normal(key);
    }
    if (v < 0.0) v = 0.0;
    return static_cast<int>(v + 0.5);
}

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;
};

// Equal-width bins spanning [min sample, max sample] of `days` consecutive
// draws starting at day 0. Frequencies always sum to `days`. Throws
// std::invalid_argument when days or bins is not positive.
std::vector<HistogramBin> demand_histogram(const DemandStream& stream, int days,
                                           int bins);

}  // namespace invopt
