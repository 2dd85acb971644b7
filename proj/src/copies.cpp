#include "qramsey/copies.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <istream>
#include <memory>
#include <mutex>
#include <set>

#include "qramsey/detail/copy_engine.hpp"
#include "qramsey/errors.hpp"

namespace qramsey {

namespace {

inline constexpr int kMaxFindWidth = 20;
inline constexpr int kMaxMaskWidth = 8;

using detail::lattice_for;

template <std::size_t W>
detail::Mask<W> admissible_mask(const Coloring& c, Color color) {
    detail::Mask<W> out{};
    const auto words = (color == Color::Red ? c.red_bits() : c.blue_bits()).words();
    for (std::size_t i = 0; i < words.size() && i < W; ++i) out.w[i] = words[i];
    return out;
}

CopyCert make_cert(int n, int m, std::vector<std::uint64_t> images, std::optional<Color> color) {
    return CopyCert{n, m, std::move(images), color};
}

template <std::size_t W>
std::optional<CopyCert> find_masked(const Coloring& c, int m, Color color, std::int64_t pivot,
                                    std::uint64_t cap) {
    const auto& lat = lattice_for<W>(c.width());
    const auto adm = admissible_mask<W>(c, color);
    std::uint64_t nodes = 0;
    if (pivot < 0) {
        detail::MaskCopyFinder<W> finder(lat, m);
        if (finder.find(adm, nodes, cap)) return make_cert(c.width(), m, finder.by_source(), color);
        return std::nullopt;
    }
    for (int level = 0; level <= m; ++level) {
        detail::MaskCopyFinder<W> finder(lat, m, level);
        if (finder.find(adm, nodes, cap, pivot)) {
            return make_cert(c.width(), m, finder.by_source(), color);
        }
    }
    return std::nullopt;
}

std::optional<CopyCert> find_generic(const Coloring& c, int m, Color color, std::int64_t pivot,
                                     std::uint64_t cap) {
    const detail::GenericCopyFinder::Admissible adm = [&](std::uint64_t x) { return c.has(x, color); };
    std::uint64_t nodes = 0;
    const int first = pivot < 0 ? -1 : 0;
    const int last = pivot < 0 ? -1 : m;
    for (int level = first; level <= last; ++level) {
        detail::GenericCopyFinder finder(c.width(), m, level);
        if (finder.find(adm, nodes, cap, pivot)) {
            return make_cert(c.width(), m, finder.by_source(), color);
        }
    }
    return std::nullopt;
}

std::optional<CopyCert> find_impl(const Coloring& c, int m, Color color, std::int64_t pivot,
                                  std::uint64_t cap) {
    if (m < 0) throw ArgumentError("copy dimension must be non-negative");
    if (c.width() > kMaxFindWidth) {
        throw ArgumentError("copy search supports N <= " + std::to_string(kMaxFindWidth));
    }
    if (m > c.width()) return std::nullopt;
    if (c.width() <= 6) return find_masked<1>(c, m, color, pivot, cap);
    if (c.width() <= kMaxMaskWidth) return find_masked<4>(c, m, color, pivot, cap);
    return find_generic(c, m, color, pivot, cap);
}

}  // namespace

std::vector<std::pair<ElementSet, ElementSet>> CopyCert::map() const {
    std::vector<std::pair<ElementSet, ElementSet>> out;
    out.reserve(images.size());
    for (std::size_t src = 0; src < images.size(); ++src) {
        out.emplace_back(ElementSet(src, dim), ElementSet(images[src], ground_width));
    }
    return out;
}

std::vector<ElementSet> CopyCert::image_family() const {
    std::vector<ElementSet> out;
    for (auto x : images) out.emplace_back(x, ground_width);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> copy_defect(const CopyCert& cert, const Coloring* coloring) {
    if (coloring && coloring->width() != cert.ground_width) {
        throw ArgumentError("certificate ground width " + std::to_string(cert.ground_width) +
                            " differs from coloring width " + std::to_string(coloring->width()));
    }
    if (cert.ground_width < 0 || cert.ground_width > kMaxWidth) return "ground width out of range";
    if (cert.dim < 0 || cert.dim > 20) return "copy dimension out of range";
    const std::size_t count = std::size_t{1} << cert.dim;
    if (cert.images.size() != count) {
        return "map covers " + std::to_string(cert.images.size()) + " sources, expected " +
               std::to_string(count);
    }
    const std::uint64_t full = full_mask(cert.ground_width);
    for (std::size_t s = 0; s < count; ++s) {
        if ((cert.images[s] & ~full) != 0) {
            return "image of " + render_bits(s) + " lies outside [" +
                   std::to_string(cert.ground_width) + "]";
        }
    }
    std::vector<std::uint64_t> sorted = cert.images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        return "map is not injective";
    }
    for (std::size_t x = 0; x < count; ++x) {
        for (std::size_t y = 0; y < count; ++y) {
            const bool src = (x & y) == x;
            const bool img = (cert.images[x] & cert.images[y]) == cert.images[x];
            if (src != img) {
                return "order violated: " + render_bits(x) + (src ? " ⊆ " : " ⊄ ") + render_bits(y) +
                       " but " + render_bits(cert.images[x]) + (img ? " ⊆ " : " ⊄ ") +
                       render_bits(cert.images[y]);
            }
        }
    }
    if (coloring && cert.color_claim) {
        for (std::size_t s = 0; s < count; ++s) {
            if (!coloring->has(cert.images[s], *cert.color_claim)) {
                return "image " + render_bits(cert.images[s]) + " is not " +
                       std::string(to_string(*cert.color_claim));
            }
        }
    }
    return std::nullopt;
}

bool verify_copy(const CopyCert& cert) { return !copy_defect(cert).has_value(); }

bool verify_copy(const CopyCert& cert, const Coloring& coloring) {
    return !copy_defect(cert, &coloring).has_value();
}

std::optional<CopyCert> find_mono_copy(const Coloring& c, int m, Color color, std::uint64_t node_cap) {
    return find_impl(c, m, color, -1, node_cap);
}

std::optional<CopyCert> find_mono_copy_through(const Coloring& c, int m, Color color,
                                               const ElementSet& pivot, std::uint64_t node_cap) {
    if (pivot.width() != c.width()) throw ArgumentError("pivot width differs from coloring");
    if (!c.has(pivot, color)) {
        throw ArgumentError("pivot " + render(pivot) + " is not " + std::string(to_string(color)));
    }
    return find_impl(c, m, color, static_cast<std::int64_t>(pivot.bits()), node_cap);
}

namespace {

template <std::size_t W>
std::vector<std::vector<ElementSet>> enumerate_masked(int n, int m, std::uint64_t cap) {
    const auto& lat = lattice_for<W>(n);
    detail::MaskCopyFinder<W> finder(lat, m);
    std::set<std::vector<std::uint32_t>> families;
    std::uint64_t nodes = 0;
    finder.for_each(lat.all(), nodes, cap, true, [&](const std::vector<std::uint32_t>& images) {
        std::vector<std::uint32_t> fam = images;
        std::sort(fam.begin(), fam.end());
        families.insert(std::move(fam));
        return false;
    });
    std::vector<std::vector<ElementSet>> out;
    out.reserve(families.size());
    for (const auto& fam : families) {
        std::vector<ElementSet> sets;
        sets.reserve(fam.size());
        for (auto x : fam) sets.emplace_back(x, n);
        out.push_back(std::move(sets));
    }
    return out;
}

}  // namespace

std::vector<std::vector<ElementSet>> enumerate_copy_images(int n, int m, std::uint64_t node_cap) {
    if (n < 0 || m < 0) throw ArgumentError("negative dimension");
    if (n > kMaxMaskWidth) {
        throw ResourceError("image enumeration supports N <= " + std::to_string(kMaxMaskWidth));
    }
    if (m > n) return {};
    if (n <= 6) return enumerate_masked<1>(n, m, node_cap);
    return enumerate_masked<4>(n, m, node_cap);
}

std::optional<BooleanAlgebra> contains_boolean_algebra(std::span<const ElementSet> family, int d,
                                                       std::uint64_t node_cap) {
    if (d < 1) throw ArgumentError("Boolean algebra dimension must be >= 1");
    if (family.empty()) return std::nullopt;
    const int n = family.front().width();
    if (n > 16) throw ResourceError("Boolean algebra search supports N <= 16");
    BitVector member(std::size_t{1} << n);
    for (const auto& s : family) {
        if (s.width() != n) throw ArgumentError("family members differ in ground width");
        member.set(s.bits());
    }
    std::vector<std::uint64_t> members;
    for (std::uint64_t x = 0; x <= full_mask(n); ++x) {
        if (member.test(x)) members.push_back(x);
    }

    std::uint64_t nodes = 0;
    std::vector<std::uint64_t> parts;
    // unions[i] holds all 2^i unions built from the first i parts.
    std::vector<std::vector<std::uint64_t>> unions(static_cast<std::size_t>(d) + 1);

    std::function<bool(std::uint64_t)> extend = [&](std::uint64_t used) -> bool {
        const std::size_t i = parts.size();
        if (static_cast<int>(i) == d) return true;
        const std::uint64_t avail = full_mask(n) & ~used;
        const std::uint64_t floor = parts.empty() ? 0 : parts.back();
        // Nonempty submasks of avail in increasing order, above the previous part.
        for (std::uint64_t x = ((0 | ~avail) + 1) & avail; x != 0; x = ((x | ~avail) + 1) & avail) {
            if (x <= floor) continue;
            if (++nodes > node_cap) {
                throw ResourceError("Boolean algebra search node cap exceeded", nodes);
            }
            bool ok = true;
            for (auto u : unions[i]) {
                if (!member.test(u | x)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            auto& next = unions[i + 1];
            next = unions[i];
            for (auto u : unions[i]) next.push_back(u | x);
            parts.push_back(x);
            if (extend(used | x)) return true;
            parts.pop_back();
        }
        return false;
    };

    for (auto base : members) {
        unions[0] = {base};
        parts.clear();
        if (extend(base)) {
            BooleanAlgebra out{ElementSet(base, n), {}};
            for (auto p : parts) out.parts.emplace_back(p, n);
            return out;
        }
    }
    return std::nullopt;
}

SmallPoset::SmallPoset(int size, std::vector<std::uint32_t> rows) : size_(size), rows_(std::move(rows)) {
    if (size < 0 || size > kMaxSize) throw ArgumentError("poset size out of range");
    if (rows_.size() != static_cast<std::size_t>(size)) throw ArgumentError("relation has wrong row count");
    for (int i = 0; i < size; ++i) {
        if ((rows_[static_cast<std::size_t>(i)] >> size) != 0 && size < 32) {
            throw ArgumentError("relation row has bits beyond the poset size");
        }
        if (!leq(i, i)) throw ArgumentError("relation is not reflexive at " + std::to_string(i));
        for (int j = 0; j < size; ++j) {
            if (i != j && leq(i, j) && leq(j, i)) {
                throw ArgumentError("relation is not antisymmetric");
            }
            for (int k = 0; k < size; ++k) {
                if (leq(i, j) && leq(j, k) && !leq(i, k)) {
                    throw ArgumentError("relation is not transitive");
                }
            }
        }
    }
}

SmallPoset SmallPoset::chain(int size) {
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < size; ++i) {
        std::uint32_t r = 0;
        for (int j = i; j < size; ++j) r |= std::uint32_t{1} << j;
        rows.push_back(r);
    }
    return SmallPoset(size, std::move(rows));
}

SmallPoset SmallPoset::antichain(int size) {
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < size; ++i) rows.push_back(std::uint32_t{1} << i);
    return SmallPoset(size, std::move(rows));
}

SmallPoset SmallPoset::boolean_lattice(int m) {
    if (m < 0 || m > 5) throw ArgumentError("boolean_lattice poset supports m <= 5");
    const int size = 1 << m;
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < size; ++i) {
        std::uint32_t r = 0;
        for (int j = 0; j < size; ++j) {
            if ((i & j) == i) r |= std::uint32_t{1} << j;
        }
        rows.push_back(r);
    }
    return SmallPoset(size, std::move(rows));
}

SmallPoset parse_small_poset(std::istream& in) {
    int p = -1;
    if (!(in >> p) || p < 0 || p > SmallPoset::kMaxSize) throw ParseError("poset file must start with its size");
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < p; ++i) {
        std::string line;
        if (!(in >> line) || line.size() != static_cast<std::size_t>(p)) {
            throw ParseError("poset row " + std::to_string(i + 1) + " must have " + std::to_string(p) +
                             " characters");
        }
        std::uint32_t r = 0;
        for (int j = 0; j < p; ++j) {
            const char ch = line[static_cast<std::size_t>(j)];
            if (ch == '1') r |= std::uint32_t{1} << j;
            else if (ch != '0') throw ParseError("poset rows use only '0' and '1'");
        }
        rows.push_back(r);
    }
    try {
        return SmallPoset(p, std::move(rows));
    } catch (const ArgumentError& e) {
        throw ParseError(e.what());
    }
}

namespace {

bool embeds(const SmallPoset& p, const std::vector<int>& order, int n, std::uint64_t& nodes,
            std::uint64_t cap) {
    const auto size = static_cast<std::size_t>(p.size());
    std::vector<std::uint64_t> image(size, 0);
    const std::uint64_t full = full_mask(n);

    std::function<bool(std::size_t)> place = [&](std::size_t pos) -> bool {
        if (pos == size) return true;
        const int v = order[pos];
        // The first element only needs one representative per level under
        // coordinate permutations: the lowest set of that level.
        for (std::uint64_t x = 0; x <= full; ++x) {
            if (pos == 0 && x != full_mask(std::popcount(x))) continue;
            bool ok = true;
            for (std::size_t q = 0; q < pos && ok; ++q) {
                const int u = order[q];
                const std::uint64_t y = image[static_cast<std::size_t>(u)];
                const bool x_in_y = (x & y) == x;
                const bool y_in_x = (x & y) == y;
                if (x == y) ok = false;
                else if (x_in_y != p.leq(v, u) || y_in_x != p.leq(u, v)) ok = false;
            }
            if (!ok) continue;
            if (++nodes > cap) throw ResourceError("dim2 node cap exceeded", nodes);
            image[static_cast<std::size_t>(v)] = x;
            if (place(pos + 1)) return true;
        }
        return false;
    };
    return place(0);
}

}  // namespace

int dim2(const SmallPoset& p, std::uint64_t node_cap) {
    if (p.size() > 10) throw ArgumentError("dim2 supports posets with at most 10 elements");
    if (p.size() <= 1) return 0;
    // Linear extension: fewer predecessors first.
    std::vector<int> order(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    auto below = [&](int v) {
        int c = 0;
        for (int u = 0; u < p.size(); ++u) c += p.leq(u, v) ? 1 : 0;
        return c;
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below(a) < below(b); });

    std::uint64_t nodes = 0;
    int n = 0;
    while ((1 << n) < p.size()) ++n;
    // The down-set map embeds any p-element poset in Q_p, so this terminates.
    for (;; ++n) {
        if (embeds(p, order, n, nodes, node_cap)) return n;
    }
}

}  // namespace qramsey
