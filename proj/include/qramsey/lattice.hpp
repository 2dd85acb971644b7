#pragma once

// Boolean lattice Q_N: subsets of [N] = {1..N} encoded as bit patterns,
// element i living in bit i-1.

#include <bit>
#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

namespace qramsey {

inline constexpr int kMaxWidth = 64;

/// Mask with the low `width` bits set, i.e. the set [width].
constexpr std::uint64_t full_mask(int width) noexcept {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

class ElementSet {
public:
    constexpr ElementSet() = default;
    /// Throws ArgumentError unless 0 <= width <= 64 and bits < 2^width.
    ElementSet(std::uint64_t bits, int width);

    static ElementSet empty(int width);
    static ElementSet full(int width);
    /// Builds from 1-based ground elements.
    static ElementSet of(std::initializer_list<int> elements, int width);

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr int width() const noexcept { return width_; }
    int level() const noexcept { return std::popcount(bits_); }

    bool contains(int element) const noexcept {
        return element >= 1 && element <= width_ && ((bits_ >> (element - 1)) & 1U);
    }
    bool subset_of(const ElementSet& other) const noexcept {
        return (bits_ & other.bits_) == bits_;
    }
    bool proper_subset_of(const ElementSet& other) const noexcept {
        return subset_of(other) && bits_ != other.bits_;
    }
    bool comparable(const ElementSet& other) const noexcept {
        return subset_of(other) || other.subset_of(*this);
    }

    /// Sorted 1-based members.
    std::vector<int> elements() const;

    friend constexpr bool operator==(const ElementSet&, const ElementSet&) = default;
    friend constexpr auto operator<=>(const ElementSet& a, const ElementSet& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    std::uint64_t bits_ = 0;
    int width_ = 0;
};

/// "{1,3,4}"; the empty set renders as "{}".
std::string render(const ElementSet& s);
std::string render_bits(std::uint64_t bits);
/// Inverse of render. Throws ParseError.
ElementSet parse_set(std::string_view text, int width);

ElementSet complement(const ElementSet& s);

/// All k-subsets of [n] in increasing integer order.
std::vector<ElementSet> level_members(int n, int k);

/// Q*_n: everything except the empty set and [n]. Throws DomainError for n = 0.
std::vector<ElementSet> interior_members(int n);

/// Every subset of [n], increasing integer order. n <= 30.
std::vector<ElementSet> all_members(int n);

/// Next k-subset in increasing integer order (Gosper's hack).
constexpr std::uint64_t next_same_level(std::uint64_t x) noexcept {
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

/// Q_[lo,hi]: all F with lo ⊆ F ⊆ hi.
class Interval {
public:
    /// Throws DomainError unless lo ⊆ hi (same width).
    Interval(ElementSet lo, ElementSet hi);

    const ElementSet& lo() const noexcept { return lo_; }
    const ElementSet& hi() const noexcept { return hi_; }
    int width() const noexcept { return lo_.width(); }

    /// Ground elements that vary inside the interval.
    std::uint64_t free_bits() const noexcept { return hi_.bits() & ~lo_.bits(); }
    int dimension() const noexcept { return std::popcount(free_bits()); }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << dimension(); }
    bool contains(const ElementSet& s) const noexcept {
        return lo_.subset_of(s) && s.subset_of(hi_);
    }

    /// Image of a set S' over [dimension()] under the re-indexing that sends
    /// coordinate j to the j-th smallest free ground element.
    ElementSet embed(std::uint64_t local) const;

    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = ElementSet;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = ElementSet;

        iterator() = default;
        iterator(const Interval* owner, std::uint64_t sub, bool done)
            : owner_(owner), sub_(sub), done_(done) {}

        ElementSet operator*() const {
            return ElementSet(owner_->lo_.bits() | sub_, owner_->width());
        }
        iterator& operator++() {
            const std::uint64_t free = owner_->free_bits();
            if (sub_ == free) {
                done_ = true;
            } else {
                // Next submask of `free` in increasing order.
                sub_ = ((sub_ | ~free) + 1) & free;
            }
            return *this;
        }
        iterator operator++(int) {
            iterator tmp = *this;
            ++*this;
            return tmp;
        }
        friend bool operator==(const iterator& a, const iterator& b) {
            return a.done_ == b.done_ && (a.done_ || a.sub_ == b.sub_);
        }

    private:
        const Interval* owner_ = nullptr;
        std::uint64_t sub_ = 0;
        bool done_ = true;
    };

    iterator begin() const { return iterator(this, 0, false); }
    iterator end() const { return iterator(this, 0, true); }

    std::vector<ElementSet> members() const;

private:
    ElementSet lo_;
    ElementSet hi_;
};

/// Binomial coefficient, exact for n <= 64.
std::uint64_t binomial(int n, int k);

}  // namespace qramsey
