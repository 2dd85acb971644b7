#pragma once

// Deliberately naive reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "qramsey/coloring.hpp"

namespace oracle {

inline bool sub(std::uint64_t a, std::uint64_t b) { return (a & b) == a; }

/// Tries every injection from Q_m into `targets` (as a sequence of distinct
/// images) and checks the iff condition at the leaves. `visit` returns true
/// to stop.
inline void each_copy_into(const std::vector<std::uint64_t>& targets, int m,
                           const std::function<bool(const std::vector<std::uint64_t>&)>& visit) {
    const std::uint64_t src_count = std::uint64_t{1} << m;
    const std::uint64_t dst_count = targets.size();
    if (src_count > dst_count) return;
    std::vector<std::uint64_t> img;
    std::vector<bool> used(dst_count, false);
    bool stop = false;
    std::function<void()> rec = [&] {
        if (stop) return;
        if (img.size() == src_count) {
            for (std::uint64_t x = 0; x < src_count; ++x) {
                for (std::uint64_t y = 0; y < src_count; ++y) {
                    if (sub(x, y) != sub(img[x], img[y])) return;
                }
            }
            stop = visit(img);
            return;
        }
        for (std::uint64_t t = 0; t < dst_count && !stop; ++t) {
            if (used[t]) continue;
            used[t] = true;
            img.push_back(targets[t]);
            rec();
            img.pop_back();
            used[t] = false;
        }
    };
    rec();
}

inline void each_copy(int n_ground, int m, const std::function<bool(const std::vector<std::uint64_t>&)>& visit) {
    std::vector<std::uint64_t> all(std::size_t{1} << n_ground);
    for (std::uint64_t s = 0; s < all.size(); ++s) all[s] = s;
    each_copy_into(all, m, visit);
}

/// Injections into the sets carrying `color` only.
inline bool has_mono_copy(const qramsey::Coloring& c, int m, qramsey::Color color) {
    std::vector<std::uint64_t> targets;
    for (std::uint64_t s = 0; s < c.size(); ++s) {
        if (c.has(s, color)) targets.push_back(s);
    }
    bool found = false;
    each_copy_into(targets, m, [&](const std::vector<std::uint64_t>&) { return found = true; });
    return found;
}

inline std::set<std::vector<std::uint64_t>> image_families(int n_ground, int m) {
    std::set<std::vector<std::uint64_t>> out;
    each_copy(n_ground, m, [&](const std::vector<std::uint64_t>& img) {
        auto fam = img;
        std::sort(fam.begin(), fam.end());
        out.insert(fam);
        return false;
    });
    return out;
}

/// Coloring of Q_N from the low 2^N bits of `word` (bit S set = S red).
inline qramsey::Coloring from_word(int n_ground, std::uint64_t word) {
    auto c = qramsey::Coloring::filled(n_ground, qramsey::Color::Blue);
    for (std::uint64_t s = 0; s < c.size(); ++s) {
        if ((word >> s) & 1U) c.set(s, qramsey::Color::Red);
    }
    return c;
}

}  // namespace oracle
