#pragma once

#include <cstdint>

namespace pcube {

// splitmix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: output i is a pure function of (seed, i), so any
// position of a stream can be recomputed independently.
class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double prob) { return next_double() < prob; }

private:
    std::uint64_t state_;
};

// Derives the seed of substream `index` from a master seed. Estimators split
// their sample budget into fixed blocks seeded this way, so results depend on
// the master seed only, never on how blocks are scheduled.
constexpr std::uint64_t split_stream(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}
