#pragma once

#include <cstdint>

namespace pbsgame {

// Counter-based splitmix64 stream. Each (seed, stream) pair is an independent
// deterministic sequence, so parallel workers can be handed disjoint streams
// and reproduce the same draws no matter how work is scheduled.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed + kGamma * (stream + 1))) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    // 53-bit uniform in [0, 1).
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace pbsgame
