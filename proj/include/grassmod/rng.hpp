#pragma once

#include <cstdint>

namespace grassmod {

// splitmix64: tiny, seedable, identical output on every platform.
// All randomized checks derive their draws from this generator so that a
// recorded seed reproduces a run bit-for-bit.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound), bound > 0. Rejection-free modulo bias is
    // irrelevant at the scales used here, but keep it unbiased anyway.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Child generator for a named subtask; decouples draw order between
    // independent checks run from one master seed.
    SplitMix64 fork(std::uint64_t salt) {
        return SplitMix64(next() ^ (salt * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
    }
};

}  // namespace grassmod
