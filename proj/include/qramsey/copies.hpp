#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qramsey/coloring.hpp"
#include "qramsey/lattice.hpp"

namespace qramsey {

inline constexpr std::uint64_t kDefaultNodeCap = 200'000'000;

/// A claimed copy of Q_m in Q_N: images[src] is the image of the subset of
/// [m] with integer encoding src.
struct CopyCert {
    int ground_width = 0;
    int dim = 0;
    std::vector<std::uint64_t> images;
    std::optional<Color> color_claim;

    std::vector<std::pair<ElementSet, ElementSet>> map() const;
    /// The image family, sorted.
    std::vector<ElementSet> image_family() const;

    friend bool operator==(const CopyCert&, const CopyCert&) = default;
};

/// First reason `cert` is not a (monochromatic) copy, or nothing when it is.
/// Throws ArgumentError if the coloring width differs from the certificate's.
std::optional<std::string> copy_defect(const CopyCert& cert, const Coloring* coloring = nullptr);

bool verify_copy(const CopyCert& cert);
bool verify_copy(const CopyCert& cert, const Coloring& coloring);

/// First monochromatic copy of Q_m in canonical backtracking order, or
/// nothing. For m > N the answer is trivially nothing. Requires N <= 20.
std::optional<CopyCert> find_mono_copy(const Coloring& c, int m, Color color,
                                       std::uint64_t node_cap = kDefaultNodeCap);

/// A monochromatic copy whose image contains `pivot`. Throws ArgumentError
/// unless the pivot carries `color`.
std::optional<CopyCert> find_mono_copy_through(const Coloring& c, int m, Color color,
                                               const ElementSet& pivot,
                                               std::uint64_t node_cap = kDefaultNodeCap);

/// Every distinct image family of a copy of Q_m in Q_N, each sorted, the
/// list sorted lexicographically. Supported for N <= 8; the node cap bounds
/// the work.
std::vector<std::vector<ElementSet>> enumerate_copy_images(int n, int m,
                                                           std::uint64_t node_cap = kDefaultNodeCap);

/// X_0 and the nonempty parts X_1..X_d of a Boolean algebra B_d.
struct BooleanAlgebra {
    ElementSet base;
    std::vector<ElementSet> parts;
};

/// Finds pairwise disjoint X_0, X_1..X_d (X_i nonempty) with every union
/// X_0 ∪ ⋃_{i∈I} X_i inside the family. Members must share a width <= 16.
std::optional<BooleanAlgebra> contains_boolean_algebra(std::span<const ElementSet> family, int d,
                                                       std::uint64_t node_cap = kDefaultNodeCap);

/// Finite poset given by its relation matrix (leq(i, j) means i <= j).
class SmallPoset {
public:
    static constexpr int kMaxSize = 32;

    /// Throws ArgumentError unless the relation is a partial order.
    SmallPoset(int size, std::vector<std::uint32_t> rows);

    static SmallPoset chain(int size);
    static SmallPoset antichain(int size);
    static SmallPoset boolean_lattice(int m);

    int size() const noexcept { return size_; }
    bool leq(int i, int j) const noexcept { return (rows_[static_cast<std::size_t>(i)] >> j) & 1U; }
    std::uint32_t row(int i) const noexcept { return rows_[static_cast<std::size_t>(i)]; }

private:
    int size_;
    std::vector<std::uint32_t> rows_;  // bit j of rows_[i] set iff i <= j
};

/// "p\n" followed by p rows of p '0'/'1' characters. Throws ParseError.
SmallPoset parse_small_poset(std::istream& in);

/// Least n such that Q_n contains a copy of p. Requires p.size() <= 10.
int dim2(const SmallPoset& p, std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace qramsey
