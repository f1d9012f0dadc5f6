#pragma once

#include <cmath>
#include <cstdint>

namespace dimerctl {

/// Splitmix64 stream. One instance per cell: a stream is derived from
/// (seed, stream index) through the avalanche finalizer, so every cell's
/// sequence is reproducible in isolation and independent of how many other
/// cells exist.
class RngStream {
public:
    explicit RngStream(std::uint64_t stream_seed) : state_(stream_seed) {}

    static RngStream for_stream(std::uint64_t seed, std::uint64_t index) {
        return RngStream(mix(seed + kGamma * (index + 1)));
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in (0, 1]; never 0, so -log(u) stays finite.
    double uniform01() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    /// Exponential waiting time with the given rate (> 0).
    double exponential(double rate) { return -std::log(uniform01()) / rate; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace dimerctl
