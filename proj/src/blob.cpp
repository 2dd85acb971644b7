#include "qramsey/blob.hpp"

#include <algorithm>
#include <bit>

#include "qramsey/errors.hpp"

namespace qramsey {

std::string_view to_string(BlobTag tag) noexcept {
    return tag == BlobTag::BlueCopy ? "BlueCopy" : "RedCopy";
}

std::vector<std::uint64_t> BlobSpec::identity_injection(int n) {
    std::vector<std::uint64_t> out(std::size_t{1} << n);
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = s;
    return out;
}

void BlobSpec::validate() const {
    auto fail = [](const std::string& why) { throw ArgumentError("invalid blob spec: " + why); };
    if (a < 0 || b < 0 || m < 0 || n < 0) fail("parameters must be non-negative");
    if (ground > kMaxColoringWidth) fail("N exceeds " + std::to_string(kMaxColoringWidth));
    if (n > 12) fail("n exceeds 12");
    if (!(ground >= n_prime && n_prime >= n && n >= a + b)) fail("need N >= n' >= n >= a+b");
    if (ground < m) fail("need N >= m");
    const int k = blocks();
    if (static_cast<int>(partition.size()) != k) {
        fail("partition has " + std::to_string(partition.size()) + " blocks, expected k = " +
             std::to_string(k));
    }
    if (ground < n_prime + k * m) fail("need N >= n' + (n+1-a-b)*m");
    std::uint64_t covered = 0;
    for (const auto& x : partition) {
        if (x.width() != ground) fail("block width differs from N");
        if (x.level() < m) fail("block " + render(x) + " has fewer than m elements");
        if ((x.bits() & covered) != 0 || (x.bits() & full_mask(n_prime)) != 0) {
            fail("blocks overlap each other or [n']");
        }
        covered |= x.bits();
    }
    if (covered != outside()) fail("blocks do not cover [N] \\ [n']");
    const std::size_t sources = std::size_t{1} << n;
    if (base_injection.size() != sources) fail("base injection must list all 2^n sources");
    for (auto img : base_injection) {
        if ((img & ~full_mask(n_prime)) != 0) fail("base injection leaves Q_{n'}");
    }
    CopyCert base{n_prime, n, base_injection, std::nullopt};
    if (auto why = copy_defect(base)) fail("base injection is not an embedding: " + *why);
}

bool check_hypotheses(const BlobSpec& spec, const Coloring& c) {
    spec.validate();
    if (c.width() != spec.ground) throw ArgumentError("coloring width differs from N");
    const std::uint64_t rest = spec.outside();
    for (std::size_t s = 0; s < spec.base_injection.size(); ++s) {
        const int level = std::popcount(s);
        if (level < spec.a && !c.is_blue(spec.base_injection[s])) return false;
        if (level > spec.n - spec.b && !c.is_blue(spec.base_injection[s] | rest)) return false;
    }
    return true;
}

BlobOutcome blob_embed(const BlobSpec& spec, const Coloring& c) {
    if (!check_hypotheses(spec, c)) throw ContractError("coloring violates the blob hypotheses");
    const auto& inj = spec.base_injection;
    const std::size_t sources = inj.size();
    const std::uint64_t rest = spec.outside();
    std::vector<std::uint64_t> image(sources, 0);
    std::vector<std::vector<std::size_t>> by_level(static_cast<std::size_t>(spec.n) + 1);
    for (std::size_t s = 0; s < sources; ++s) by_level[static_cast<std::size_t>(std::popcount(s))].push_back(s);

    for (int level = 0; level < spec.a; ++level) {
        for (auto s : by_level[static_cast<std::size_t>(level)]) image[s] = inj[s];
    }
    for (int level = spec.n - spec.b + 1; level <= spec.n; ++level) {
        for (auto s : by_level[static_cast<std::size_t>(level)]) image[s] = inj[s] | rest;
    }

    std::uint64_t prefix = 0;
    std::size_t block = 0;
    for (int level = spec.a; level <= spec.n - spec.b; ++level) {
        const auto& members = by_level[static_cast<std::size_t>(level)];
        const bool bottoms_blue = std::all_of(members.begin(), members.end(),
                                              [&](std::size_t s) { return c.is_blue(inj[s] | prefix); });
        if (bottoms_blue) {
            for (auto s : members) image[s] = inj[s] | prefix;
            continue;
        }
        if (block >= spec.partition.size()) throw DefectError("blob construction ran out of blocks");
        const ElementSet x = spec.partition[block];
        for (auto s : members) {
            const ElementSet lo(inj[s] | prefix, spec.ground);
            const ElementSet hi(inj[s] | prefix | x.bits(), spec.ground);
            const Interval probe(lo, hi);
            std::optional<std::uint64_t> best;
            for (const auto& f : probe) {
                if (!c.is_blue(f.bits())) continue;
                if (!best || std::popcount(f.bits()) < std::popcount(*best)) best = f.bits();
            }
            if (!best) {
                // Entire probe interval is red: use the m smallest elements of X.
                std::uint64_t coords = 0;
                std::uint64_t left = x.bits();
                for (int i = 0; i < spec.m; ++i, left &= left - 1) coords |= left & (~left + 1);
                const Interval sub(lo, ElementSet(lo.bits() | coords, spec.ground));
                CopyCert cert{spec.ground, spec.m, {}, Color::Red};
                for (std::uint64_t local = 0; local < (std::uint64_t{1} << spec.m); ++local) {
                    cert.images.push_back(sub.embed(local).bits());
                }
                if (!verify_copy(cert, c)) throw DefectError("red blob certificate failed verification");
                return {BlobTag::RedCopy, std::move(cert)};
            }
            image[s] = *best;
        }
        prefix |= x.bits();
        ++block;
    }

    CopyCert cert{spec.ground, spec.n, std::move(image), Color::Blue};
    if (auto why = copy_defect(cert, &c)) {
        throw DefectError("blue blob certificate failed verification: " + *why);
    }
    return {BlobTag::BlueCopy, std::move(cert)};
}

AutoSpec auto_spec(int n_ground, int n, int m, int a, int b, const Coloring& c) {
    if (a < 0 || b < 0 || m < 0 || !(n_ground >= n && n >= a + b && n_ground >= m)) {
        throw ArgumentError("auto_spec needs N >= n >= a+b and N >= m");
    }
    const int k = n + 1 - a - b;
    if (n_ground < n + k * m) {
        return {std::nullopt, "infeasible: need N >= n + (n+1-a-b)*m = " + std::to_string(n + k * m) +
                                  ", got N = " + std::to_string(n_ground)};
    }
    BlobSpec spec;
    spec.ground = n_ground;
    spec.n = n;
    spec.n_prime = n;
    spec.m = m;
    spec.a = a;
    spec.b = b;
    spec.base_injection = BlobSpec::identity_injection(n);
    int next = n;  // 0-based bit index of the next unused ground element
    for (int i = 0; i < k; ++i) {
        const int size = (i + 1 == k) ? n_ground - next : m;
        spec.partition.emplace_back(full_mask(size) << next, n_ground);
        next += size;
    }
    if (!check_hypotheses(spec, c)) {
        return {std::nullopt, "identity base injection does not meet the layer color conditions"};
    }
    return {std::move(spec), {}};
}

}  // namespace qramsey
