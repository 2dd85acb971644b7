#pragma once

// Backtracking engines that look for copies of Q_m (images related by
// x ⊆ y iff f(x) ⊆ f(y)) among the admissible elements of Q_N.
//
// Sources are assigned in level-then-integer order and candidate images in
// increasing integer order, so the first copy found is canonical. A pivot
// run fixes the first source of one level onto a given element; since
// Aut(Q_m) is transitive on each level, trying every level covers all copies
// that use the pivot.

#include <bit>
#include <cstdint>
#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "qramsey/detail/mask.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/lattice.hpp"

namespace qramsey::detail {

enum class Rel : std::uint8_t { Below, Above, Incomparable };

struct Constraint {
    int position;  // earlier position in the plan
    Rel rel;       // relation of that source to the current one
};

/// Assignment order and pairwise relations for sources of Q_m.
struct SourcePlan {
    int m = 0;
    std::vector<std::uint32_t> order;
    std::vector<int> level;                        // level of order[i]
    std::vector<std::vector<Constraint>> constraints;
    std::vector<int> previous_atom;                // position of the preceding atom, or -1

    /// pivot_level < 0: plain level-then-integer order. Otherwise the first
    /// source of that level goes first.
    SourcePlan(int m, int pivot_level = -1) : m(m) {
        const std::uint32_t count = std::uint32_t{1} << m;
        std::vector<std::uint32_t> base;
        for (int k = 0; k <= m; ++k) {
            for (std::uint32_t s = 0; s < count; ++s) {
                if (std::popcount(s) == k) base.push_back(s);
            }
        }
        if (pivot_level >= 0) {
            const std::uint32_t first = (std::uint32_t{1} << pivot_level) - 1;
            order.push_back(first);
            for (auto s : base) {
                if (s != first) order.push_back(s);
            }
        } else {
            order = std::move(base);
        }
        int last_atom = -1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const std::uint32_t s = order[i];
            level.push_back(std::popcount(s));
            std::vector<Constraint> cs;
            for (std::size_t j = 0; j < i; ++j) {
                const std::uint32_t t = order[j];
                Rel r = Rel::Incomparable;
                if ((t & s) == t) r = Rel::Below;
                else if ((t & s) == s) r = Rel::Above;
                cs.push_back({static_cast<int>(j), r});
            }
            constraints.push_back(std::move(cs));
            const bool atom = std::popcount(s) == 1;
            previous_atom.push_back(atom ? last_atom : -1);
            if (atom) last_atom = static_cast<int>(i);
        }
    }
};

/// Precomputed strict up-sets, down-sets and incomparability masks of Q_N.
template <std::size_t W>
class MaskLattice {
public:
    using M = Mask<W>;

    explicit MaskLattice(int n) : n_(n), size_(std::size_t{1} << n) {
        up_.resize(size_);
        down_.resize(size_);
        incomp_.resize(size_);
        levels_.resize(static_cast<std::size_t>(n) + 1);
        for (std::size_t x = 0; x < size_; ++x) {
            levels_[static_cast<std::size_t>(std::popcount(x))].set(x);
            for (std::size_t y = 0; y < size_; ++y) {
                if (x == y) continue;
                if ((x & y) == x) up_[x].set(y);
                else if ((x & y) == y) down_[x].set(y);
                else incomp_[x].set(y);
            }
        }
        all_ = M{};
        for (std::size_t x = 0; x < size_; ++x) all_.set(x);
    }

    int width() const noexcept { return n_; }
    std::size_t size() const noexcept { return size_; }
    const M& all() const noexcept { return all_; }
    const M& up(std::size_t x) const noexcept { return up_[x]; }
    const M& down(std::size_t x) const noexcept { return down_[x]; }
    const M& incomparable(std::size_t x) const noexcept { return incomp_[x]; }
    const M& level(int k) const noexcept { return levels_[static_cast<std::size_t>(k)]; }

    /// Elements able to host a source of level `k` of Q_m: at least k below
    /// and m-k above.
    M window(int m, int k) const noexcept {
        M out{};
        for (int lv = k; lv <= n_ - (m - k); ++lv) out |= levels_[static_cast<std::size_t>(lv)];
        return out;
    }

    const M& related(Rel r, std::size_t image) const noexcept {
        // r is the relation of the earlier source to the current one.
        switch (r) {
            case Rel::Below: return up_[image];
            case Rel::Above: return down_[image];
            default: return incomp_[image];
        }
    }

private:
    int n_;
    std::size_t size_;
    M all_{};
    std::vector<M> up_, down_, incomp_, levels_;
};

/// Shared, lazily built lattice tables for N <= 8.
template <std::size_t W>
const MaskLattice<W>& lattice_for(int n) {
    static std::array<std::unique_ptr<MaskLattice<W>>, 9> cache;
    static std::array<std::once_flag, 9> once;
    const auto idx = static_cast<std::size_t>(n);
    std::call_once(once[idx], [&] { cache[idx] = std::make_unique<MaskLattice<W>>(n); });
    return *cache[idx];
}

/// Mask-based finder for a fixed (lattice, m, pivot level).
template <std::size_t W>
class MaskCopyFinder {
public:
    using M = Mask<W>;

    MaskCopyFinder(const MaskLattice<W>& lattice, int m, int pivot_level = -1)
        : lat_(&lattice), plan_(m, pivot_level) {
        for (int k = 0; k <= m; ++k) windows_.push_back(lattice.window(m, k));
        images_.resize(plan_.order.size());
    }

    const SourcePlan& plan() const noexcept { return plan_; }

    /// Looks for a copy inside `admissible`; with `pivot` set, the plan's
    /// first source is pinned to it. On success `images()` holds f by position.
    bool find(const M& admissible, std::uint64_t& nodes, std::uint64_t cap,
              std::int64_t pivot = -1) {
        admissible_ = &admissible;
        nodes_ = &nodes;
        cap_ = cap;
        pivot_ = pivot;
        on_copy_ = nullptr;
        if (lat_->width() < plan_.m) return false;
        return dfs(0);
    }

    /// Visits every copy (every bijection), stopping if `visit` returns true.
    /// With `atoms_increasing`, only the bijection whose atom images increase
    /// is produced, i.e. one per image family.
    void for_each(const M& admissible, std::uint64_t& nodes, std::uint64_t cap,
                  bool atoms_increasing, std::function<bool(const std::vector<std::uint32_t>&)> visit) {
        admissible_ = &admissible;
        nodes_ = &nodes;
        cap_ = cap;
        pivot_ = -1;
        atoms_increasing_ = atoms_increasing;
        on_copy_ = std::move(visit);
        if (lat_->width() < plan_.m) return;
        dfs(0);
        on_copy_ = nullptr;
        atoms_increasing_ = false;
    }

    /// Image of each source by position in plan().order.
    const std::vector<std::uint32_t>& images() const noexcept { return images_; }

    /// images() re-indexed by source integer.
    std::vector<std::uint64_t> by_source() const {
        std::vector<std::uint64_t> out(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) out[plan_.order[i]] = images_[i];
        return out;
    }

private:
    bool dfs(std::size_t pos) {
        if (pos == plan_.order.size()) {
            return on_copy_ ? on_copy_(images_) : true;
        }
        M cand = *admissible_ & windows_[static_cast<std::size_t>(plan_.level[pos])];
        for (const auto& c : plan_.constraints[pos]) {
            cand &= lat_->related(c.rel, images_[static_cast<std::size_t>(c.position)]);
        }
        if (pos == 0 && pivot_ >= 0) {
            const auto p = static_cast<std::size_t>(pivot_);
            if (!cand.test(p)) return false;
            cand = M{};
            cand.set(p);
        }
        const int prev_atom = plan_.previous_atom[pos];
        const std::uint32_t floor =
            (atoms_increasing_ && prev_atom >= 0) ? images_[static_cast<std::size_t>(prev_atom)] : 0;
        return cand.any_of_bits([&](std::size_t x) {
            if (atoms_increasing_ && prev_atom >= 0 && x <= floor) return false;
            if (++*nodes_ > cap_) {
                throw ResourceError("copy search node cap exceeded", *nodes_);
            }
            images_[pos] = static_cast<std::uint32_t>(x);
            return dfs(pos + 1);
        });
    }

    const MaskLattice<W>* lat_;
    SourcePlan plan_;
    std::vector<M> windows_;
    std::vector<std::uint32_t> images_;
    const M* admissible_ = nullptr;
    std::uint64_t* nodes_ = nullptr;
    std::uint64_t cap_ = 0;
    std::int64_t pivot_ = -1;
    bool atoms_increasing_ = false;
    std::function<bool(const std::vector<std::uint32_t>&)> on_copy_;
};

/// Finder for wider lattices: candidates are walked as supersets of the
/// images below and subsets of the images above, then filtered.
class GenericCopyFinder {
public:
    using Admissible = std::function<bool(std::uint64_t)>;

    GenericCopyFinder(int n, int m, int pivot_level = -1) : n_(n), plan_(m, pivot_level) {
        images_.resize(plan_.order.size());
    }

    const SourcePlan& plan() const noexcept { return plan_; }

    bool find(const Admissible& admissible, std::uint64_t& nodes, std::uint64_t cap,
              std::int64_t pivot = -1) {
        admissible_ = &admissible;
        nodes_ = &nodes;
        cap_ = cap;
        pivot_ = pivot;
        if (n_ < plan_.m) return false;
        return dfs(0);
    }

    std::vector<std::uint64_t> by_source() const {
        std::vector<std::uint64_t> out(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) out[plan_.order[i]] = images_[i];
        return out;
    }

private:
    bool fits(std::size_t pos, std::uint64_t x) const {
        const int lv = std::popcount(x);
        const int k = plan_.level[pos];
        if (lv < k || n_ - lv < plan_.m - k) return false;
        for (const auto& c : plan_.constraints[pos]) {
            const std::uint64_t y = images_[static_cast<std::size_t>(c.position)];
            const bool x_in_y = (x & y) == x;
            const bool y_in_x = (x & y) == y;
            switch (c.rel) {
                case Rel::Below:
                    if (!y_in_x || x == y) return false;
                    break;
                case Rel::Above:
                    if (!x_in_y || x == y) return false;
                    break;
                case Rel::Incomparable:
                    if (x_in_y || y_in_x) return false;
                    break;
            }
        }
        return (*admissible_)(x);
    }

    bool dfs(std::size_t pos) {
        if (pos == plan_.order.size()) return true;
        std::uint64_t lower = 0;
        std::uint64_t upper = full_mask(n_);
        for (const auto& c : plan_.constraints[pos]) {
            const std::uint64_t y = images_[static_cast<std::size_t>(c.position)];
            if (c.rel == Rel::Below) lower |= y;
            if (c.rel == Rel::Above) upper &= y;
        }
        auto try_image = [&](std::uint64_t x) {
            if (!fits(pos, x)) return false;
            if (++*nodes_ > cap_) throw ResourceError("copy search node cap exceeded", *nodes_);
            images_[pos] = x;
            return dfs(pos + 1);
        };
        if (pos == 0 && pivot_ >= 0) return try_image(static_cast<std::uint64_t>(pivot_));
        if ((lower & upper) != lower) return false;
        const std::uint64_t free = upper & ~lower;
        for (std::uint64_t sub = 0;; sub = ((sub | ~free) + 1) & free) {
            if (try_image(lower | sub)) return true;
            if (sub == free) break;
        }
        return false;
    }

    int n_;
    SourcePlan plan_;
    std::vector<std::uint64_t> images_;
    const Admissible* admissible_ = nullptr;
    std::uint64_t* nodes_ = nullptr;
    std::uint64_t cap_ = 0;
    std::int64_t pivot_ = -1;
};

}  // namespace qramsey::detail
