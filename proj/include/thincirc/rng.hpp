// Counter-based pseudo-randomness.
//
// Draw i of a stream is a pure function of (key, i), so sampling is
// reproducible bit-for-bit regardless of evaluation order or thread
// scheduling, and streams split by deriving sub-keys.
#pragma once

#include <cstdint>

namespace thincirc {

// splitmix64 output function evaluated at position `index` of seed's stream.
inline std::uint64_t splitmix_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Sub-stream key derivation; chain for multi-part keys.
inline std::uint64_t derive_key(std::uint64_t key, std::uint64_t stream) {
    return splitmix_at(key ^ 0xA02BDBF7BB3C0A7FULL, stream);
}

inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform draw in [0,1) at counter position i of the keyed stream.
inline double uniform_at(std::uint64_t key, std::uint64_t i) {
    return u01(splitmix_at(key, i));
}

// Sequential convenience wrapper over the counter stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return splitmix_at(key_, counter_++); }
    double next_double() { return u01(next_u64()); }
    // Uniform integer in [0, bound); bound > 0. Modulo bias is irrelevant at
    // the bounds used here (<= 2^26 against a 64-bit draw).
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }
    bool next_bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace thincirc
