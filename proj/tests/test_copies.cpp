#include <doctest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qramsey/copies.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/rng.hpp"

using namespace qramsey;

namespace {

CopyCert cert_of(int ground, int dim, std::vector<std::uint64_t> images, std::optional<Color> claim = {}) {
    return CopyCert{ground, dim, std::move(images), claim};
}

void check_levels_monotone(const CopyCert& cert) {
    for (std::uint64_t x = 0; x < cert.images.size(); ++x) {
        for (std::uint64_t y = 0; y < cert.images.size(); ++y) {
            if (x != y && oracle::sub(x, y)) {
                CHECK(std::popcount(cert.images[x]) < std::popcount(cert.images[y]));
            }
        }
    }
}

}  // namespace

TEST_CASE("verify_copy examples") {
    CHECK(verify_copy(cert_of(2, 2, {0, 1, 2, 3})));
    CHECK_FALSE(verify_copy(cert_of(3, 2, {0, 0b001, 0b011, 0b111})));
    CHECK_FALSE(verify_copy(cert_of(3, 2, {0, 0b001, 0b010, 0b111}, Color::Blue), parity_coloring(3)));
    CHECK(verify_copy(cert_of(3, 2, {0, 0b001, 0b010, 0b111})));
    CHECK_FALSE(verify_copy(cert_of(3, 1, {0b001, 0b001})));  // not injective
    CHECK_THROWS_AS(verify_copy(cert_of(3, 1, {0, 1}), parity_coloring(4)), ArgumentError);
    // Hat endpoints satisfy either claim.
    const Coloring h = constant_coloring(2, Color::Blue).with_hat();
    CHECK(verify_copy(cert_of(2, 1, {0, 3}, Color::Red), h));
    CHECK_FALSE(verify_copy(cert_of(2, 1, {0, 1}, Color::Red), h));
}

TEST_CASE("find_mono_copy examples") {
    const Coloring p4 = parity_coloring(4);
    CHECK_FALSE(find_mono_copy(p4, 2, Color::Red));
    CHECK_FALSE(find_mono_copy(p4, 3, Color::Blue));
    auto id = find_mono_copy(constant_coloring(3, Color::Blue), 3, Color::Blue);
    REQUIRE(id);
    CHECK(id->images == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7});
    auto pair = find_mono_copy(p4, 1, Color::Red);
    REQUIRE(pair);
    CHECK(verify_copy(*pair, p4));
    CHECK(oracle::has_mono_copy(p4, 1, Color::Red));
    CHECK_FALSE(find_mono_copy(p4, 5, Color::Red));  // m > N
}

TEST_CASE("node cap surfaces as a resource error") {
    const Coloring c = parity_coloring(6);
    try {
        (void)find_mono_copy(c, 3, Color::Red, 5);
        FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
        CHECK(e.nodes() >= 5);
    }
}

TEST_CASE("oracle equivalence for N <= 2 and sampled N = 3, 4") {
    for (int n = 0; n <= 2; ++n) {
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << (1 << n)); ++w) {
            const Coloring c = oracle::from_word(n, w);
            for (int m = 0; m <= n; ++m) {
                for (Color col : {Color::Red, Color::Blue}) {
                    auto found = find_mono_copy(c, m, col);
                    CHECK(found.has_value() == oracle::has_mono_copy(c, m, col));
                    if (found) CHECK(verify_copy(*found, c));
                }
            }
        }
    }
    SplitMix64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const Coloring c = oracle::from_word(3, rng.next());
        for (int m = 0; m <= 3; ++m) {
            CHECK(find_mono_copy(c, m, Color::Red).has_value() == oracle::has_mono_copy(c, m, Color::Red));
        }
        const Coloring d = random_coloring(4, rng.next());
        CHECK(find_mono_copy(d, 2, Color::Blue).has_value() == oracle::has_mono_copy(d, 2, Color::Blue));
    }
}

TEST_CASE("certificates are canonical and level monotone") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Coloring c = random_coloring(6, seed);
        for (int m = 1; m <= 3; ++m) {
            auto a = find_mono_copy(c, m, Color::Blue);
            auto b = find_mono_copy(c, m, Color::Blue);
            CHECK(a == b);
            if (a) {
                CHECK(verify_copy(*a, c));
                check_levels_monotone(*a);
            }
        }
    }
}

TEST_CASE("generic engine agrees with the mask engine") {
    // N = 9 uses the generic backtracker; its answers must match restriction
    // to Q_8 when the coloring only has colored structure there.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Coloring c = random_coloring(9, seed);
        for (int m = 1; m <= 3; ++m) {
            auto found = find_mono_copy(c, m, Color::Red);
            if (found) CHECK(verify_copy(*found, c));
        }
    }
    Coloring sparse = constant_coloring(9, Color::Blue);
    sparse.set(0b1, Color::Red);
    sparse.set(0b111, Color::Red);
    CHECK(find_mono_copy(sparse, 1, Color::Red));
    CHECK_FALSE(find_mono_copy(sparse, 2, Color::Red));
}

TEST_CASE("copies through a pivot") {
    Coloring c = constant_coloring(3, Color::Blue);
    c.set(0b101, Color::Red);
    CHECK_FALSE(find_mono_copy_through(c, 1, Color::Red, ElementSet(0b101, 3)));
    const Coloring p4 = parity_coloring(4);
    auto through = find_mono_copy_through(p4, 2, Color::Blue, ElementSet::empty(4));
    REQUIRE(through);
    CHECK(verify_copy(*through, p4));
    CHECK(std::find(through->images.begin(), through->images.end(), 0) != through->images.end());
    CHECK_THROWS_AS(find_mono_copy_through(p4, 2, Color::Red, ElementSet::empty(4)), ArgumentError);

    // Incremental property: no copy before, none through the new set => none after.
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Coloring d = random_coloring(4, rng.next());
        const std::uint64_t s = rng.next() % 16;
        const int m = 1 + static_cast<int>(rng.next() % 2);
        d.set(s, Color::Blue);
        Coloring before = d;
        before.set(s, Color::Red);
        if (find_mono_copy(before, m, Color::Blue)) continue;
        const bool through_s = find_mono_copy_through(d, m, Color::Blue, ElementSet(s, 4)).has_value();
        CHECK(through_s == find_mono_copy(d, m, Color::Blue).has_value());
    }
}

TEST_CASE("image enumeration against all injections") {
    CHECK(enumerate_copy_images(2, 2).size() == 1);
    CHECK(enumerate_copy_images(1, 2).empty());
    const std::vector<std::pair<int, int>> cases = {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3},
                                                    {4, 1}, {4, 2}, {5, 2}};
    for (const auto& [n, m] : cases) {
        CAPTURE(n);
        CAPTURE(m);
        std::set<std::vector<std::uint64_t>> mine;
        for (const auto& fam : enumerate_copy_images(n, m)) {
            std::vector<std::uint64_t> bits;
            for (const auto& s : fam) bits.push_back(s.bits());
            mine.insert(bits);
        }
        CHECK(mine == oracle::image_families(n, m));
    }
    // Larger cases must complete; spot-check structure.
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{4, 3}, {5, 3}}) {
        const auto fams = enumerate_copy_images(n, m);
        CHECK(!fams.empty());
        CHECK(std::is_sorted(fams.begin(), fams.end()));
        for (const auto& f : fams) CHECK(f.size() == (std::size_t{1} << m));
    }
}

TEST_CASE("every emitted certificate is an enumerated image") {
    for (int n = 2; n <= 4; ++n) {
        for (int m = 1; m <= std::min(n, 3); ++m) {
            const auto fams = enumerate_copy_images(n, m);
            const std::set<std::vector<ElementSet>> all(fams.begin(), fams.end());
            for (std::uint64_t seed = 0; seed < 30; ++seed) {
                const Coloring c = random_coloring(n, seed * 31 + n);
                for (Color col : {Color::Red, Color::Blue}) {
                    if (auto cert = find_mono_copy(c, m, col)) CHECK(all.count(cert->image_family()) == 1);
                }
            }
        }
    }
}

TEST_CASE("Boolean algebra containment") {
    auto sets = [](std::initializer_list<std::uint64_t> bits, int width) {
        std::vector<ElementSet> out;
        for (auto b : bits) out.emplace_back(b, width);
        return out;
    };
    auto q2 = all_members(2);
    auto found = contains_boolean_algebra(q2, 2);
    REQUIRE(found);
    CHECK(found->base == ElementSet::empty(2));
    CHECK(found->parts == std::vector<ElementSet>{ElementSet::of({1}, 2), ElementSet::of({2}, 2)});

    CHECK_FALSE(contains_boolean_algebra(sets({0, 1, 3}, 2), 2));
    CHECK(contains_boolean_algebra(sets({0, 1}, 1), 1));
    CHECK_THROWS_AS(contains_boolean_algebra(q2, 0), ArgumentError);

    // A Q_2 copy that is not a Boolean algebra: {} < {1},{2} < {1,2,3}.
    auto skew = sets({0, 1, 2, 7}, 3);
    CHECK_FALSE(contains_boolean_algebra(skew, 2));

    // Naive check on random families of Q_4.
    SplitMix64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t pick = rng.next() & 0xFFFF;
        std::vector<ElementSet> fam;
        for (std::uint64_t s = 0; s < 16; ++s) {
            if ((pick >> s) & 1U) fam.emplace_back(s, 4);
        }
        bool naive = false;
        for (std::uint64_t x0 = 0; x0 < 16 && !naive; ++x0) {
            for (std::uint64_t x1 = 1; x1 < 16 && !naive; ++x1) {
                for (std::uint64_t x2 = 1; x2 < 16 && !naive; ++x2) {
                    if ((x0 & x1) || (x0 & x2) || (x1 & x2)) continue;
                    naive = ((pick >> x0) & (pick >> (x0 | x1)) & (pick >> (x0 | x2)) & (pick >> (x0 | x1 | x2))) & 1U;
                }
            }
        }
        auto got = contains_boolean_algebra(fam, 2);
        CHECK(got.has_value() == naive);
    }
}

TEST_CASE("2-dimension") {
    CHECK(dim2(SmallPoset::chain(2)) == 1);
    CHECK(dim2(SmallPoset::antichain(2)) == 2);
    CHECK(dim2(SmallPoset::boolean_lattice(2)) == 2);
    CHECK(dim2(SmallPoset::chain(5)) == 4);
    CHECK(dim2(SmallPoset::antichain(3)) == 3);
    CHECK(dim2(SmallPoset::antichain(6)) == 4);  // C(4,2) = 6
    CHECK(dim2(SmallPoset::boolean_lattice(3)) == 3);

    std::istringstream in("3\n110\n010\n011\n");  // V shape: 0 < 1 > 2
    const SmallPoset v = parse_small_poset(in);
    CHECK(v.leq(0, 1));
    CHECK(v.leq(2, 1));
    CHECK(dim2(v) == 2);

    std::istringstream bad("2\n11\n11\n");  // not antisymmetric
    CHECK_THROWS_AS(parse_small_poset(bad), ParseError);
    CHECK_THROWS_AS(SmallPoset(2, {0b11, 0b11}), ArgumentError);
    std::istringstream garbage("2\n1x\n01\n");
    CHECK_THROWS_AS(parse_small_poset(garbage), ParseError);
}
