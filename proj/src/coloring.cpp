#include "qramsey/coloring.hpp"

#include <cctype>

#include "qramsey/errors.hpp"
#include "qramsey/rng.hpp"

namespace qramsey {

std::string_view to_string(Color c) noexcept { return c == Color::Red ? "red" : "blue"; }

Color parse_color(std::string_view text) {
    std::string lower;
    for (char ch : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "red" || lower == "r") return Color::Red;
    if (lower == "blue" || lower == "b") return Color::Blue;
    throw ParseError("unknown color '" + std::string(text) + "'");
}

Coloring Coloring::filled(int width, Color fill, bool hat) {
    if (width < 0 || width > kMaxColoringWidth) {
        throw ResourceError("coloring width " + std::to_string(width) + " exceeds cap " +
                            std::to_string(kMaxColoringWidth));
    }
    if (hat && width == 0) throw DomainError("hat mode needs N >= 1 (Q*_0 is undefined)");
    Coloring c;
    c.width_ = width;
    c.hat_ = hat;
    c.red_ = BitVector(c.size(), fill == Color::Red);
    c.blue_ = BitVector(c.size(), fill == Color::Blue);
    if (hat) {
        for (std::uint64_t e : {std::uint64_t{0}, c.top()}) {
            c.red_.set(e);
            c.blue_.set(e);
        }
    }
    return c;
}

std::optional<Color> Coloring::sole_color(std::uint64_t s) const noexcept {
    if (both(s)) return std::nullopt;
    return is_red(s) ? Color::Red : Color::Blue;
}

void Coloring::set(std::uint64_t s, Color c) {
    if (s >= size()) throw ArgumentError("set index out of range");
    if (hat_ && (s == 0 || s == top())) {
        throw ArgumentError("hat endpoints are permanently both colors");
    }
    red_.assign(s, c == Color::Red);
    blue_.assign(s, c == Color::Blue);
}

std::string Coloring::render() const {
    std::string out(size(), '?');
    for (std::uint64_t s = 0; s < size(); ++s) {
        out[s] = both(s) ? '*' : (is_red(s) ? 'R' : 'B');
    }
    return out;
}

Coloring Coloring::swapped() const {
    Coloring out = *this;
    std::swap(out.red_, out.blue_);
    return out;
}

Coloring Coloring::with_hat() const {
    if (width_ == 0) throw DomainError("hat mode needs N >= 1 (Q*_0 is undefined)");
    Coloring out = *this;
    out.hat_ = true;
    for (std::uint64_t e : {std::uint64_t{0}, top()}) {
        out.red_.set(e);
        out.blue_.set(e);
    }
    return out;
}

bool Coloring::well_formed() const {
    for (std::uint64_t s = 0; s < size(); ++s) {
        const bool endpoint = hat_ && (s == 0 || s == top());
        if (endpoint) {
            if (!both(s)) return false;
        } else if (is_red(s) == is_blue(s)) {
            return false;
        }
    }
    return true;
}

Coloring parity_coloring(int n) {
    Coloring c = Coloring::filled(n, Color::Blue);
    for (std::uint64_t s = 0; s < c.size(); ++s) {
        if (std::popcount(s) % 2 == 1) c.set(s, Color::Red);
    }
    return c;
}

Coloring constant_coloring(int n, Color color) { return Coloring::filled(n, color); }

Coloring layer_coloring(int n, const std::vector<Color>& by_level) {
    if (n < 0 || by_level.size() != static_cast<std::size_t>(n) + 1) {
        throw ArgumentError("layer coloring needs one color per level 0..N");
    }
    Coloring c = Coloring::filled(n, Color::Blue);
    for (std::uint64_t s = 0; s < c.size(); ++s) {
        if (by_level[static_cast<std::size_t>(std::popcount(s))] == Color::Red) c.set(s, Color::Red);
    }
    return c;
}

Coloring random_coloring(int n, std::uint64_t seed) {
    if (n < 0) throw ArgumentError("negative width");
    Coloring c = Coloring::filled(n, Color::Blue);
    std::uint64_t word = 0;
    for (std::uint64_t s = 0; s < c.size(); ++s) {
        if ((s & 63) == 0) word = SplitMix64::at(seed, s >> 6);
        if ((word >> (s & 63)) & 1U) c.set(s, Color::Red);
    }
    return c;
}

Coloring from_string(int n, std::string_view word, bool hat) {
    if (n < 0 || n > kMaxColoringWidth) throw ParseError("coloring width out of range");
    if (hat && n == 0) throw ParseError("hat mode needs N >= 1");
    const std::uint64_t size = std::uint64_t{1} << n;
    if (word.size() != size) {
        throw ParseError("coloring word has length " + std::to_string(word.size()) +
                         ", expected " + std::to_string(size));
    }
    Coloring c = Coloring::filled(n, Color::Blue, hat);
    for (std::uint64_t s = 0; s < size; ++s) {
        const bool endpoint = hat && (s == 0 || s == size - 1);
        const char ch = word[s];
        if (endpoint) {
            if (ch != '*') {
                throw ParseError("hat endpoint at index " + std::to_string(s) + " must be '*'");
            }
            continue;
        }
        if (ch == 'R') {
            c.set(s, Color::Red);
        } else if (ch != 'B') {
            throw ParseError("bad coloring character '" + std::string(1, ch) + "' at index " +
                             std::to_string(s));
        }
    }
    return c;
}

Coloring restrict_to_interval(const Coloring& c, const Interval& interval, bool hat_result) {
    if (interval.width() != c.width()) throw ArgumentError("interval width differs from coloring");
    const int d = interval.dimension();
    if (c.hat() && !hat_result &&
        (interval.lo().bits() == 0 || interval.hi().bits() == c.top())) {
        throw ArgumentError("restricting a hat coloring onto one of its endpoints needs hat_result");
    }
    Coloring out = Coloring::filled(d, Color::Blue, hat_result);
    const std::uint64_t top = full_mask(d);
    for (std::uint64_t local = 0; local <= top; ++local) {
        if (hat_result && (local == 0 || local == top)) continue;
        const std::uint64_t s = interval.embed(local).bits();
        if (c.is_red(s) && !c.is_blue(s)) out.set(local, Color::Red);
    }
    return out;
}

PartialColoring::PartialColoring(int width, bool hat)
    : width_(width), hat_(hat),
      assigned_(std::size_t{1} << width), red_(std::size_t{1} << width) {
    if (width < 0 || width > kMaxColoringWidth) throw ArgumentError("width out of range");
    if (hat && width == 0) throw DomainError("hat mode needs N >= 1");
    if (hat) {
        assigned_.set(0);
        assigned_.set(full_mask(width));
    }
}

void PartialColoring::assign(std::uint64_t s, Color c) {
    if (endpoint(s)) throw ArgumentError("hat endpoints are fixed");
    assigned_.set(s);
    red_.assign(s, c == Color::Red);
}

void PartialColoring::unassign(std::uint64_t s) {
    if (endpoint(s)) throw ArgumentError("hat endpoints are fixed");
    assigned_.reset(s);
    red_.reset(s);
}

Coloring PartialColoring::to_coloring() const {
    if (!complete()) throw ContractError("partial coloring still has open sets");
    Coloring out = Coloring::filled(width_, Color::Blue, hat_);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << width_); ++s) {
        if (!endpoint(s) && red_.test(s)) out.set(s, Color::Red);
    }
    return out;
}

}  // namespace qramsey
