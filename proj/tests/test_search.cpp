#include <doctest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/search.hpp"

using namespace qramsey;

namespace {

SearchOutcome run(int ground, int m, int n, bool hat = false, SymmetryOptions sym = {}, int workers = 1) {
    SearchProblem p;
    p.ground = ground;
    p.red_m = m;
    p.blue_n = n;
    p.hat = hat;
    p.symmetry = sym;
    p.worker_count = workers;
    return search_good_coloring(p);
}

/// Model listing every variable, positive iff the set is red.
std::vector<int> model_of(const Coloring& c) {
    std::vector<int> model;
    for (std::uint64_t s = 0; s < c.size(); ++s) {
        const int v = static_cast<int>(s) + 1;
        model.push_back(c.is_red(s) ? v : -v);
    }
    return model;
}

}  // namespace

TEST_CASE("search examples") {
    CHECK(run(3, 2, 2).tag == SearchTag::Witness);
    CHECK(run(4, 2, 2).tag == SearchTag::Exhausted);
    CHECK(run(4, 2, 3).tag == SearchTag::Witness);
    CHECK(run(2, 1, 2).tag == SearchTag::Witness);
    CHECK(run(3, 1, 2).tag == SearchTag::Exhausted);
    CHECK(run(3, 1, 3).tag == SearchTag::Witness);
    CHECK(run(4, 1, 3).tag == SearchTag::Exhausted);
}

TEST_CASE("witnesses are good and the first one is deterministic") {
    const auto a = run(4, 2, 3);
    const auto b = run(4, 2, 3);
    REQUIRE(a.witness);
    CHECK(*a.witness == *b.witness);
    CHECK(verify_witness(*a.witness, 2, 3));
    // Re-found with symmetry pruning off, the first witness may only come later in the order.
    const auto plain = run(4, 2, 3, false, {false, false, false});
    REQUIRE(plain.witness);
    CHECK(verify_witness(*plain.witness, 2, 3));
    // Red sorts before blue in the search order.
    auto key = [](const Coloring& c) {
        std::string k = c.render();
        for (char& ch : k) ch = ch == 'R' ? '0' : '1';
        return k;
    };
    CHECK(key(*plain.witness) <= key(*a.witness));
}

TEST_CASE("verify_witness examples") {
    CHECK(verify_witness(parity_coloring(4), 2, 3));
    CHECK_FALSE(verify_witness(constant_coloring(3, Color::Blue), 2, 3));
    CHECK_FALSE(verify_witness(parity_coloring(4), 2, 2));
}

TEST_CASE("search tags equal raw enumeration for N <= 4 in every symmetry mode") {
    for (int ground = 0; ground <= 4; ++ground) {
        for (int m = 1; m <= 4; ++m) {
            for (int n = 1; n <= 4; ++n) {
                for (bool hat : {false, true}) {
                    if (hat && ground == 0) continue;
                    CAPTURE(ground);
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(hat);
                    const bool exists = good_coloring_exists_brute_force(ground, m, n, hat);
                    const SearchTag expect = exists ? SearchTag::Witness : SearchTag::Exhausted;
                    std::vector<SymmetryOptions> modes = {{false, false, false}, {true, false, false}, {true, false, true}};
                    if (m == n) {
                        modes.push_back({false, true, false});
                        modes.push_back({true, true, false});
                    }
                    for (const auto& sym : modes) {
                        const auto out = run(ground, m, n, hat, sym);
                        CHECK(out.tag == expect);
                        if (out.witness) {
                            CHECK(out.witness->hat() == hat);
                            CHECK(verify_witness(*out.witness, m, n));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("raw enumeration matches the naive copy oracle at N <= 3") {
    for (int ground = 1; ground <= 3; ++ground) {
        for (int m = 1; m <= 3; ++m) {
            for (int n = 1; n <= 3; ++n) {
                bool naive = false;
                for (std::uint64_t w = 0; w < (std::uint64_t{1} << (1 << ground)) && !naive; ++w) {
                    const Coloring c = oracle::from_word(ground, w);
                    naive = !oracle::has_mono_copy(c, m, Color::Red) && !oracle::has_mono_copy(c, n, Color::Blue);
                }
                CHECK(naive == good_coloring_exists_brute_force(ground, m, n, false));
            }
        }
    }
}

TEST_CASE("worker count does not change the tag") {
    for (auto [g, m, n] : std::vector<std::tuple<int, int, int>>{{4, 2, 2}, {4, 2, 3}, {3, 1, 2}, {4, 1, 4}}) {
        const SearchTag one = run(g, m, n).tag;
        CHECK(run(g, m, n, false, {}, 2).tag == one);
        CHECK(run(g, m, n, false, {}, 3).tag == one);
    }
}

TEST_CASE("node cap and validation") {
    SearchProblem p;
    p.ground = 5;
    p.red_m = 2;
    p.blue_n = 3;
    p.node_cap = 100;
    const auto out = search_good_coloring(p);
    CHECK(out.tag == SearchTag::CapHit);
    CHECK_FALSE(out.witness);

    SearchProblem bad = p;
    bad.ground = 9;
    CHECK_THROWS_AS(search_good_coloring(bad), ArgumentError);
    bad = p;
    bad.red_m = 0;
    CHECK_THROWS_AS(search_good_coloring(bad), ArgumentError);
    bad = p;
    bad.symmetry.use_color_swap = true;
    CHECK_THROWS_AS(search_good_coloring(bad), ArgumentError);
    bad = p;
    bad.node_cap = 0;
    CHECK_THROWS_AS(search_good_coloring(bad), ArgumentError);
}

TEST_CASE("CNF export") {
    std::ostringstream out;
    const CnfCounts counts = export_cnf(2, 2, 2, false, out);
    CHECK(counts.variables == 4);
    CHECK(counts.clauses == 2);
    const std::string text = out.str();
    CHECK(text.find("p cnf 4 2\n") != std::string::npos);
    CHECK(text.find("c N=2 m=2 n=2 hat=0") != std::string::npos);
    CHECK(text.find("-1 -2 -3 -4 0\n") != std::string::npos);
    CHECK(text.find("1 2 3 4 0\n") != std::string::npos);

    std::istringstream in(text);
    const Cnf parsed = parse_dimacs(in);
    CHECK(parsed.clauses == build_cnf(2, 2, 2, false).clauses);
    CHECK(solve_cnf_exhaustive(parsed).has_value());

    CHECK_FALSE(solve_cnf_exhaustive(build_cnf(4, 2, 2, false)).has_value());

    std::istringstream broken("p cnf 3 1\n1 2 x 0\n");
    CHECK_THROWS_AS(parse_dimacs(broken), ParseError);
}

TEST_CASE("CNF clauses are exactly the image families") {
    for (int ground = 1; ground <= 4; ++ground) {
        for (int m = 1; m <= 2; ++m) {
            for (int n = 1; n <= 2; ++n) {
                for (bool hat : {false, true}) {
                    std::set<std::vector<int>> expect;
                    const std::uint64_t top = (std::uint64_t{1} << ground) - 1;
                    auto add = [&](int dim, int sign) {
                        for (const auto& fam : oracle::image_families(ground, dim)) {
                            std::vector<int> clause;
                            for (auto s : fam) {
                                if (hat && (s == 0 || s == top)) continue;
                                clause.push_back(sign * static_cast<int>(s + 1));
                            }
                            expect.insert(clause);
                        }
                    };
                    add(m, -1);
                    add(n, +1);
                    const Cnf cnf = build_cnf(ground, m, n, hat);
                    CHECK(cnf.variables == (1 << ground));
                    CHECK(std::set<std::vector<int>>(cnf.clauses.begin(), cnf.clauses.end()) == expect);
                    CHECK(std::is_sorted(cnf.clauses.begin(), cnf.clauses.end()));
                    CHECK(std::adjacent_find(cnf.clauses.begin(), cnf.clauses.end()) == cnf.clauses.end());
                }
            }
        }
    }
}

TEST_CASE("CNF satisfiability equals the search tag") {
    for (int ground = 1; ground <= 4; ++ground) {
        for (int m = 1; m <= 3; ++m) {
            for (int n = 1; n <= 3; ++n) {
                for (bool hat : {false, true}) {
                    const bool sat = solve_cnf_exhaustive(build_cnf(ground, m, n, hat)).has_value();
                    CHECK(sat == (run(ground, m, n, hat).tag == SearchTag::Witness));
                }
            }
        }
    }
}

TEST_CASE("model import") {
    const ModelVerdict good = import_model(4, model_of(parity_coloring(4)), 2, 3);
    CHECK(good.good);
    CHECK(good.coloring == parity_coloring(4));

    const ModelVerdict red = import_model(2, {1, 2, 3, 4}, 2, 2);
    CHECK_FALSE(red.good);
    REQUIRE(red.violation);
    CHECK(red.violation->color_claim == Color::Red);
    CHECK(red.violation->dim == 2);
    CHECK(red.report.find("red") != std::string::npos);

    CHECK_THROWS_AS(import_model(2, {1, 2, 3}, 2, 2), ParseError);
    CHECK_THROWS_AS(import_model(2, {1, -1, 2, 3, 4}, 2, 2), ParseError);
    CHECK_THROWS_AS(import_model(2, {1, 2, 3, 4, 5}, 2, 2), ParseError);

    // Solver output format.
    std::istringstream solver("c comment\ns SATISFIABLE\nv 1 -2 -3\nv 4 0\n");
    CHECK(parse_model(solver) == std::vector<int>{1, -2, -3, 4});
    std::istringstream unsat("s UNSATISFIABLE\n");
    CHECK_THROWS_AS(parse_model(unsat), ParseError);

    // Solving then decoding yields a verified witness.
    const auto model = solve_cnf_exhaustive(build_cnf(4, 2, 3, false));
    REQUIRE(model);
    std::vector<int> lits;
    for (std::size_t v = 0; v < model->size(); ++v) lits.push_back((*model)[v] ? int(v + 1) : -int(v + 1));
    CHECK(import_model(4, lits, 2, 3).good);
}

TEST_CASE("hat mode model import ignores endpoint literals") {
    const Coloring c = from_string(2, "*RB*", true);
    const ModelVerdict v = import_model(2, {1, 2, -3, 4}, 1, 1, true);
    CHECK(v.coloring == c);
}
