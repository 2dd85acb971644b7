#pragma once

#include <cstdint>

namespace qramsey {

/// SplitMix64 (Steele, Lea, Flood 2014). Output i of the stream seeded with s
/// is mix(s + (i+1) * 0x9E3779B97F4A7C15), so any position can be computed
/// directly; this is the only generator used for randomness in the project.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// The i-th output (0-based) without advancing.
    static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t i) noexcept {
        return mix(seed + (i + 1) * kGamma);
    }

    constexpr std::uint64_t next() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    using result_type = std::uint64_t;
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    constexpr result_type operator()() noexcept { return next(); }

private:
    std::uint64_t state_;
};

/// Child seed for independent sub-streams (per trial, per check).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64::at(seed, index);
}

}  // namespace qramsey
