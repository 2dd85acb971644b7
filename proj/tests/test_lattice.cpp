#include <doctest.h>

#include <random>
#include <set>

#include "qramsey/errors.hpp"
#include "qramsey/lattice.hpp"
#include "qramsey/rng.hpp"

using namespace qramsey;

TEST_CASE("level members") {
    auto zero = level_members(4, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == ElementSet::empty(4));

    CHECK(level_members(4, 2).size() == 6);

    auto singletons = level_members(5, 1);
    REQUIRE(singletons.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(singletons[i] == ElementSet::of({i + 1}, 5));

    CHECK_THROWS_AS(level_members(4, 5), ArgumentError);
    CHECK_THROWS_AS(level_members(4, -1), ArgumentError);
    CHECK_THROWS_AS(level_members(65, 1), ArgumentError);
}

TEST_CASE("levels partition the lattice, in increasing order") {
    for (int n = 0; n <= 12; ++n) {
        std::uint64_t total = 0;
        for (int k = 0; k <= n; ++k) {
            auto row = level_members(n, k);
            CHECK(row.size() == binomial(n, k));
            for (std::size_t i = 0; i < row.size(); ++i) {
                CHECK(row[i].level() == k);
                if (i > 0) CHECK(row[i - 1].bits() < row[i].bits());
            }
            total += row.size();
        }
        CHECK(total == (std::uint64_t{1} << n));
    }
}

TEST_CASE("interval") {
    const int n = 3;
    Interval whole(ElementSet::empty(n), ElementSet::full(n));
    CHECK(whole.size() == 8);
    CHECK(whole.members() == all_members(n));

    Interval small(ElementSet::of({1}, n), ElementSet::of({1, 2, 3}, n));
    std::vector<ElementSet> expect = {ElementSet::of({1}, n), ElementSet::of({1, 2}, n),
                                      ElementSet::of({1, 3}, n), ElementSet::of({1, 2, 3}, n)};
    CHECK(small.members() == expect);
    CHECK(small.dimension() == 2);
    CHECK(small.embed(0b10) == ElementSet::of({1, 3}, n));

    CHECK_THROWS_AS(Interval(ElementSet::of({2}, n), ElementSet::of({1}, n)), DomainError);
}

TEST_CASE("random comparable intervals have 2^(free bits) members") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 14);
        const std::uint64_t hi = rng.next() & full_mask(n);
        const std::uint64_t lo = hi & rng.next();
        Interval iv(ElementSet(lo, n), ElementSet(hi, n));
        std::set<std::uint64_t> seen;
        for (const auto& s : iv) {
            CHECK(iv.contains(s));
            seen.insert(s.bits());
        }
        CHECK(seen.size() == (std::uint64_t{1} << std::popcount(hi & ~lo)));
        CHECK(iv.size() == seen.size());
    }
}

TEST_CASE("complement") {
    CHECK(complement(ElementSet::empty(5)) == ElementSet::of({1, 2, 3, 4, 5}, 5));
    CHECK(complement(ElementSet::of({2}, 5)) == ElementSet::of({1, 3, 4, 5}, 5));
    for (const auto& s : all_members(4)) {
        CHECK(complement(complement(s)) == s);
        CHECK(complement(s).level() == 4 - s.level());
    }
}

TEST_CASE("interior members") {
    CHECK(interior_members(1).empty());
    auto two = interior_members(2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == ElementSet::of({1}, 2));
    CHECK(two[1] == ElementSet::of({2}, 2));
    CHECK(interior_members(5).size() == 30);
    CHECK_THROWS_AS(interior_members(0), DomainError);
}

TEST_CASE("rendering") {
    CHECK(render(ElementSet::empty(3)) == "{}");
    CHECK(render(ElementSet::of({1, 3, 4}, 5)) == "{1,3,4}");
    for (const auto& s : all_members(5)) CHECK(parse_set(render(s), 5) == s);
    CHECK_THROWS_AS(parse_set("{1,9}", 5), ParseError);
    CHECK_THROWS_AS(parse_set("1,2", 5), ParseError);
    CHECK_THROWS_AS(ElementSet(8, 3), ArgumentError);
}

TEST_CASE("wide sets") {
    const auto top = ElementSet::full(64);
    CHECK(top.level() == 64);
    CHECK(complement(top) == ElementSet::empty(64));
    CHECK(level_members(64, 1).size() == 64);
    CHECK(level_members(64, 64).size() == 1);
}
