// Counter-style splittable RNG with explicit, reproducible streams.
//
// Each (seed, stream_id) pair defines an independent SplitMix64 sequence:
// the stream's initial state and its odd increment ("gamma") are both
// derived from the pair through the SplitMix64 finalizer, the same
// construction used by Java's SplittableRandom. Replication r of sample
// size n is assigned stream_id = mix64(n * 0x9E3779B97F4A7C15 + r + 1),
// which is the published mapping other implementations must reproduce.

#pragma once

#include <cstdint>
#include <limits>

namespace sumax {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Stream id for replication `rep` of sample size `n`; fixed across
// implementations so that results are comparable byte for byte.
constexpr std::uint64_t stream_for(std::uint64_t n, std::uint64_t rep) noexcept {
    return mix64(n * 0x9E3779B97F4A7C15ULL + rep + 1);
}

class SplitMixEngine {
public:
    using result_type = std::uint64_t;

    explicit SplitMixEngine(RngStream stream) noexcept {
        state_ = mix64(stream.seed ^ mix64(stream.stream_id));
        // Gamma must be odd; distinct streams get distinct gammas.
        gamma_ = mix64(stream.stream_id + 0x9E3779B97F4A7C15ULL) | 1ULL;
    }

    std::uint64_t operator()() noexcept {
        state_ += gamma_;
        return mix64(state_);
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept {
        return std::numeric_limits<std::uint64_t>::max();
    }

    // Uniform draw from the open interval (0,1). The top 53 bits give a
    // multiple of 2^-53 in [0,1); zero is rejected because downstream
    // quantile functions map u = 0 to +infinity.
    double uniform_open() noexcept {
        for (;;) {
            const double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

private:
    std::uint64_t state_;
    std::uint64_t gamma_;
};

}  // namespace sumax
