#pragma once

#include <cstdint>

namespace ppsc {

/// Deterministic 64-bit generator (splitmix64). All randomness in the library
/// goes through this so results are identical across platforms, standard
/// library versions, and thread counts.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound >= 1. Rejection keeps it exact.
    uint64_t next_below(uint64_t bound) {
        uint64_t x, r;
        do {
            x = next_u64();
            r = x % bound;
        } while (x - r > uint64_t(0) - bound);
        return r;
    }

private:
    uint64_t state_;
};

/// Independent stream for a (seed, index) pair. Stream k is reproducible no
/// matter how many sibling streams exist or in which order they are drawn.
inline Rng stream_rng(uint64_t seed, uint64_t index) {
    Rng mixer(seed ^ (0x9e3779b97f4a7c15ull * (index + 0x632be59bd9b4e019ull)));
    mixer.next_u64();
    return Rng(mixer.next_u64());
}

} // namespace ppsc
