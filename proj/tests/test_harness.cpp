#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/harness.hpp"
#include "qramsey/rng.hpp"

using namespace qramsey;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qramsey-test-harness" / name;
    fs::remove_all(dir);
    return dir;
}

double oracle_probability(int n, int ground) {
    const std::uint64_t total = std::uint64_t{1} << (1 << ground);
    std::uint64_t hits = 0;
    for (std::uint64_t w = 0; w < total; ++w) {
        const Coloring c = oracle::from_word(ground, w);
        hits += oracle::has_mono_copy(c, n, Color::Red) || oracle::has_mono_copy(c, n, Color::Blue);
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

/// Report with timing fields removed, for run-to-run comparison.
Json stable(const ExperimentReport& r) {
    Json j = to_json(r);
    if (j["outcome"].contains("searches")) {
        for (auto& s : j["outcome"]["searches"]) s.erase("seconds");
    }
    return j;
}

}  // namespace

TEST_CASE("default ground size") {
    CHECK(default_ground(2, LogBase::Two) == 6);
    CHECK(default_ground(2, LogBase::E) == 5);
    CHECK(default_ground(4, LogBase::Two) == 24);
    CHECK(default_ground(3, LogBase::Two) == 15);  // 9 * 1.58496...
    CHECK(default_ground(8, LogBase::Two) == 72);
    CHECK_THROWS_AS(default_ground(1, LogBase::Two), DomainError);
}

TEST_CASE("exact probabilities") {
    CHECK(exact_mono_probability(2, 2) == doctest::Approx(0.125));
    CHECK(exact_mono_probability(1, 2) == doctest::Approx(oracle_probability(1, 2)));
    CHECK(exact_mono_probability(2, 3) == doctest::Approx(oracle_probability(2, 3)));
}

TEST_CASE("Monte Carlo frequency") {
    const McResult a = mc_mono_frequency(1, 2, 1000, 17);
    const double exact1 = oracle_probability(1, 2);
    CHECK(exact1 > 0.9);
    CHECK(a.frequency > 0.85);
    CHECK(a.low <= a.frequency);
    CHECK(a.frequency <= a.high);
    CHECK(a.half_width == doctest::Approx((a.high - a.low) / 2));

    const McResult b = mc_mono_frequency(2, 2, 1000, 17);
    CHECK(b.frequency == doctest::Approx(0.125).epsilon(0.5));
    const McResult again = mc_mono_frequency(2, 2, 1000, 17);
    CHECK(again.hits == b.hits);

    CHECK_THROWS_AS(mc_mono_frequency(2, 2, 0, 1), ArgumentError);
    CHECK_THROWS_AS(mc_mono_frequency(2, 11, 10, 1), ResourceError);
    CHECK_THROWS_AS(mc_mono_frequency(4, 6, 10, 1), ResourceError);
}

TEST_CASE("confidence intervals have 95% coverage") {
    // An exact 95% interval covers in 100 meta-trials a Binomial(100, 0.95)
    // number of times, which is below 95 about 40% of the time. The bounds
    // below fail for a correct interval with probability under 3%.
    auto coverage = [](std::uint64_t base, int metas) {
        int covered = 0;
        for (int meta = 0; meta < metas; ++meta) {
            const McResult r = mc_mono_frequency(2, 2, 1000, derive_seed(base, static_cast<std::uint64_t>(meta)));
            covered += r.low <= 0.125 && 0.125 <= r.high;
        }
        return covered;
    };
    const int hundred = coverage(0xC0FFEE, 100);
    MESSAGE("covered " << hundred << " of 100");
    CHECK(hundred >= 90);
    const int many = coverage(0xBEEF, 2000);
    MESSAGE("covered " << many << " of 2000");
    CHECK(many >= 1875);
    CHECK(many <= 1925);
}

TEST_CASE("registry") {
    const auto& reg = check_registry();
    std::vector<std::string> names;
    for (const auto& c : reg) names.push_back(c.name);
    for (const char* want : {"thm8-lower", "thm1v-q2q2", "thm1ii-q1qn", "thm8-upper", "lemma1-totality",
                             "bounds-table", "cnf-agreement", "mc-thm1vi", "cert-integrity"}) {
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    }
    for (const auto& c : reg) CHECK(c.slow == (c.name == "thm8-upper"));
    CHECK_THROWS_AS(reproduce("bogus", {scratch("bogus")}), UsageError);
    CHECK_THROWS_AS(reproduce_many({"thm8-lower", "bogus"}, {scratch("bogus")}, false), UsageError);
}

TEST_CASE("reproduce writes certificates before reporting") {
    ReproduceOptions opt;
    opt.out_dir = scratch("thm8");
    const ExperimentReport r = reproduce("thm8-lower", opt);
    CHECK(r.passed);
    REQUIRE(r.artifacts.size() == 1);
    CHECK(fs::exists(opt.out_dir / "thm8-lower" / r.artifacts[0]));
    CHECK(verify_cert_file(opt.out_dir / "thm8-lower" / "report.json").ok);
    CHECK(parse_report(read_json(opt.out_dir / "thm8-lower" / "report.json")) == r);
}

TEST_CASE("q2q2 check") {
    ReproduceOptions opt;
    opt.out_dir = scratch("q2q2");
    const ExperimentReport r = reproduce("thm1v-q2q2", opt);
    CHECK(r.passed);
    REQUIRE(r.outcome["searches"].size() == 2);
    CHECK(r.outcome["searches"][0]["tag"] == "Witness");
    CHECK(r.outcome["searches"][1]["tag"] == "Exhausted");
}

TEST_CASE("checks are deterministic and independent of parallel execution") {
    const std::vector<std::string> names = {"thm1ii-q1qn", "lemma1-totality", "cert-integrity"};
    ReproduceOptions seq;
    seq.out_dir = scratch("seq");
    ReproduceOptions par;
    par.out_dir = scratch("par");
    const auto a = reproduce_many(names, seq, false);
    const auto b = reproduce_many(names, par, true);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].passed);
        CHECK(stable(a[i]) == stable(b[i]));
    }
    ReproduceOptions other = seq;
    other.seed = 1;
    other.out_dir = scratch("seed1");
    const auto c = reproduce("lemma1-totality", other);
    CHECK(c.passed);
    CHECK(c.seed != a[1].seed);
}
