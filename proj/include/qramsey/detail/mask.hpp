#pragma once

// Fixed-width bit masks over the 2^N elements of Q_N (N <= 8), used by the
// hot paths of copy detection and the exhaustive search.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace qramsey::detail {

template <std::size_t W>
struct Mask {
    std::array<std::uint64_t, W> w{};

    static constexpr std::size_t kBits = 64 * W;

    constexpr bool test(std::size_t i) const noexcept { return (w[i >> 6] >> (i & 63)) & 1U; }
    constexpr void set(std::size_t i) noexcept { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    constexpr void reset(std::size_t i) noexcept { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    constexpr bool any() const noexcept {
        for (auto x : w) {
            if (x) return true;
        }
        return false;
    }
    constexpr int count() const noexcept {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }

    constexpr Mask& operator&=(const Mask& o) noexcept {
        for (std::size_t i = 0; i < W; ++i) w[i] &= o.w[i];
        return *this;
    }
    constexpr Mask& operator|=(const Mask& o) noexcept {
        for (std::size_t i = 0; i < W; ++i) w[i] |= o.w[i];
        return *this;
    }
    friend constexpr Mask operator&(Mask a, const Mask& b) noexcept { return a &= b; }
    friend constexpr Mask operator|(Mask a, const Mask& b) noexcept { return a |= b; }
    friend constexpr bool operator==(const Mask&, const Mask&) = default;
    friend constexpr auto operator<=>(const Mask&, const Mask&) = default;

    /// Calls f(index) for set bits in increasing order; stops early when f returns true.
    template <class F>
    constexpr bool any_of_bits(F&& f) const {
        for (std::size_t i = 0; i < W; ++i) {
            for (std::uint64_t x = w[i]; x != 0; x &= x - 1) {
                if (f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)))) return true;
            }
        }
        return false;
    }
};

/// Words needed for Q_N.
constexpr std::size_t words_for(int n) noexcept { return n <= 6 ? 1 : 4; }

}  // namespace qramsey::detail
