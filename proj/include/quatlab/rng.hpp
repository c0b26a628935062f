#pragma once

#include <cstdint>

namespace quatlab {

/// SplitMix64 generator. Used everywhere randomness is needed so that runs
/// are reproducible from (seed, stream) alone, independent of platform and
/// library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double strictly inside (0, 1): (k + 0.5) / 2^52 for a 52-bit k.
    double uniform() {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Independent stream keyed by (seed, stream_index) only. Stream k of seed s
/// always yields the same sequence, regardless of how many other streams are
/// drawn or in what order.
inline SplitMix64 make_stream(std::uint64_t seed, std::uint64_t stream_index) {
    const std::uint64_t key =
        detail::mix64(seed) ^ detail::mix64((stream_index + 1) * 0x9E3779B97F4A7C15ULL);
    return SplitMix64(key);
}

}  // namespace quatlab
