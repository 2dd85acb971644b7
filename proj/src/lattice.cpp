#include "qramsey/lattice.hpp"

#include <algorithm>
#include <charconv>

#include "qramsey/errors.hpp"

namespace qramsey {

ElementSet::ElementSet(std::uint64_t bits, int width) : bits_(bits), width_(width) {
    if (width < 0 || width > kMaxWidth) {
        throw ArgumentError("ground width " + std::to_string(width) + " outside [0,64]");
    }
    if ((bits & ~full_mask(width)) != 0) {
        throw ArgumentError("set bits exceed ground width " + std::to_string(width));
    }
}

ElementSet ElementSet::empty(int width) { return ElementSet(0, width); }

ElementSet ElementSet::full(int width) { return ElementSet(full_mask(width), width); }

ElementSet ElementSet::of(std::initializer_list<int> elements, int width) {
    std::uint64_t bits = 0;
    for (int e : elements) {
        if (e < 1 || e > width) {
            throw ArgumentError("element " + std::to_string(e) + " not in [" +
                                std::to_string(width) + "]");
        }
        bits |= std::uint64_t{1} << (e - 1);
    }
    return ElementSet(bits, width);
}

std::vector<int> ElementSet::elements() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(std::countr_zero(b) + 1);
    }
    return out;
}

std::string render_bits(std::uint64_t bits) {
    std::string out = "{";
    bool first = true;
    for (std::uint64_t b = bits; b != 0; b &= b - 1) {
        if (!first) out += ',';
        out += std::to_string(std::countr_zero(b) + 1);
        first = false;
    }
    out += '}';
    return out;
}

std::string render(const ElementSet& s) { return render_bits(s.bits()); }

ElementSet parse_set(std::string_view text, int width) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
        throw ParseError("set must be written in braces: '" + std::string(text) + "'");
    }
    std::string_view body = text.substr(1, text.size() - 2);
    std::uint64_t bits = 0;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view tok = body.substr(0, comma);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 1 || value > width) {
            throw ParseError("bad set element '" + std::string(tok) + "'");
        }
        bits |= std::uint64_t{1} << (value - 1);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
        if (body.empty()) throw ParseError("trailing comma in set");
    }
    return ElementSet(bits, width);
}

ElementSet complement(const ElementSet& s) {
    return ElementSet(~s.bits() & full_mask(s.width()), s.width());
}

std::vector<ElementSet> level_members(int n, int k) {
    if (n < 0 || n > kMaxWidth || k < 0 || k > n) {
        throw ArgumentError("level_members needs 0 <= k <= n <= 64, got n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
    }
    std::vector<ElementSet> out;
    if (k == 0) {
        out.emplace_back(0, n);
        return out;
    }
    out.reserve(binomial(n, k));
    const std::uint64_t last = full_mask(k) << (n - k);
    for (std::uint64_t x = full_mask(k);; x = next_same_level(x)) {
        out.emplace_back(x, n);
        if (x == last) break;
    }
    return out;
}

std::vector<ElementSet> interior_members(int n) {
    if (n == 0) throw DomainError("Q*_0 is undefined");
    if (n < 0 || n > 30) throw ArgumentError("interior_members needs 1 <= n <= 30");
    std::vector<ElementSet> out;
    const std::uint64_t top = full_mask(n);
    out.reserve(top - 1);
    for (std::uint64_t x = 1; x < top; ++x) out.emplace_back(x, n);
    return out;
}

std::vector<ElementSet> all_members(int n) {
    if (n < 0 || n > 30) throw ArgumentError("all_members needs 0 <= n <= 30");
    std::vector<ElementSet> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t x = 0; x <= full_mask(n); ++x) out.emplace_back(x, n);
    return out;
}

Interval::Interval(ElementSet lo, ElementSet hi) : lo_(lo), hi_(hi) {
    if (lo.width() != hi.width()) throw DomainError("interval endpoints differ in width");
    if (!lo.subset_of(hi)) {
        throw DomainError("interval needs lo ⊆ hi, got " + render(lo) + " and " + render(hi));
    }
}

ElementSet Interval::embed(std::uint64_t local) const {
    std::uint64_t out = lo_.bits();
    std::uint64_t free = free_bits();
    for (int j = 0; free != 0; ++j, free &= free - 1) {
        if ((local >> j) & 1U) out |= free & (~free + 1);
    }
    return ElementSet(out, width());
}

std::vector<ElementSet> Interval::members() const { return {begin(), end()}; }

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n-k+i) / i is always integral; fine in 128-bit for n <= 64.
        r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * (n - k + i) / i);
    }
    return r;
}

}  // namespace qramsey
