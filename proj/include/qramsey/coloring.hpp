#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qramsey/bits.hpp"
#include "qramsey/lattice.hpp"

namespace qramsey {

enum class Color : std::uint8_t { Red, Blue };

constexpr Color opposite(Color c) noexcept { return c == Color::Red ? Color::Blue : Color::Red; }
std::string_view to_string(Color c) noexcept;
/// Accepts "red"/"blue" (any case) and "R"/"B".
Color parse_color(std::string_view text);

/// Largest ground width a materialised coloring may have.
inline constexpr int kMaxColoringWidth = 24;

/// Total red/blue coloring of Q_N. In hat mode the empty set and [N] carry
/// both colors and every other set exactly one.
class Coloring {
public:
    Coloring() = default;

    int width() const noexcept { return width_; }
    bool hat() const noexcept { return hat_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << width_; }
    std::uint64_t top() const noexcept { return full_mask(width_); }

    bool is_red(std::uint64_t s) const noexcept { return red_.test(s); }
    bool is_blue(std::uint64_t s) const noexcept { return blue_.test(s); }
    bool has(std::uint64_t s, Color c) const noexcept {
        return c == Color::Red ? is_red(s) : is_blue(s);
    }
    bool has(const ElementSet& s, Color c) const noexcept { return has(s.bits(), c); }
    /// True for the hat endpoints, which count as both colors.
    bool both(std::uint64_t s) const noexcept { return is_red(s) && is_blue(s); }
    /// The single color of s; empty for a both-colored endpoint.
    std::optional<Color> sole_color(std::uint64_t s) const noexcept;

    const BitVector& red_bits() const noexcept { return red_; }
    const BitVector& blue_bits() const noexcept { return blue_; }

    /// One char per set in integer order: 'R', 'B', or '*' for hat endpoints.
    std::string render() const;

    /// Copy with the color of every single-colored set exchanged.
    Coloring swapped() const;
    /// Copy with the empty set and [N] marked as both colors. Requires N >= 1.
    Coloring with_hat() const;

    /// Sets one position. Refuses hat endpoints.
    void set(std::uint64_t s, Color c);

    /// Checks the exactly-one-color (or hat) invariant; used by certificate readers.
    bool well_formed() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;

    /// Every set `fill`, endpoints both-colored when `hat`. Checks width.
    static Coloring filled(int width, Color fill, bool hat = false);

private:
    int width_ = 0;
    bool hat_ = false;
    BitVector red_;
    BitVector blue_;
};

/// Blue iff |S| is even.
Coloring parity_coloring(int n);
Coloring constant_coloring(int n, Color color);
/// Every set of level k gets by_level[k]; needs n + 1 entries.
Coloring layer_coloring(int n, const std::vector<Color>& by_level);
/// Set S is red iff bit (S mod 64) of SplitMix64 output floor(S/64) is 1.
/// Throws ResourceError for n > 24.
Coloring random_coloring(int n, std::uint64_t seed);
/// Word over {R,B} of length 2^n; in hat mode positions 0 and 2^n-1 must be '*'.
/// Throws ParseError.
Coloring from_string(int n, std::string_view word, bool hat);

/// Coloring of Q_d, d = interval dimension, where S' takes the color of
/// lo ∪ embed(S'). If `hat_result` is set the local bottom and top become
/// both-colored. A hat coloring may only be restricted with hat_result set
/// or to an interval avoiding both of its endpoints.
Coloring restrict_to_interval(const Coloring& c, const Interval& interval,
                              bool hat_result = false);

/// Search frontier: some sets colored, the rest open.
class PartialColoring {
public:
    PartialColoring(int width, bool hat);

    int width() const noexcept { return width_; }
    bool hat() const noexcept { return hat_; }

    bool assigned(std::uint64_t s) const noexcept { return assigned_.test(s); }
    /// Color of an assigned non-endpoint set.
    Color color(std::uint64_t s) const noexcept {
        return red_.test(s) ? Color::Red : Color::Blue;
    }
    void assign(std::uint64_t s, Color c);
    void unassign(std::uint64_t s);
    bool complete() const noexcept { return assigned_.count() == assigned_.size(); }

    /// Throws ContractError when some set is still open.
    Coloring to_coloring() const;

private:
    bool endpoint(std::uint64_t s) const noexcept {
        return hat_ && (s == 0 || s == full_mask(width_));
    }

    int width_;
    bool hat_;
    BitVector assigned_;
    BitVector red_;
};

}  // namespace qramsey
