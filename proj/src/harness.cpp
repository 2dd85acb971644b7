#include "qramsey/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <numeric>
#include <sstream>

#include "qramsey/blob.hpp"
#include "qramsey/bounds.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/rng.hpp"
#include "qramsey/search.hpp"
#include "qramsey/version.hpp"

namespace qramsey {

namespace {

constexpr double kZ95 = 1.959963984540054;

bool has_mono_copy(const Coloring& c, int n) {
    return find_mono_copy(c, n, Color::Red).has_value() || find_mono_copy(c, n, Color::Blue).has_value();
}

}  // namespace

McResult mc_mono_frequency(int n, int n_ground, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw ArgumentError("trials must be >= 1");
    if (n < 1 || n_ground < 0) throw ArgumentError("need n >= 1 and N >= 0");
    if (n > 3 || n_ground > 10) throw ResourceError("Monte Carlo supports n <= 3 and N <= 10");
    McResult r;
    r.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (has_mono_copy(random_coloring(n_ground, derive_seed(seed, t)), n)) ++r.hits;
    }
    const double k = static_cast<double>(trials);
    const double p = static_cast<double>(r.hits) / k;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / k;
    const double centre = (p + z2 / (2.0 * k)) / denom;
    const double spread = kZ95 * std::sqrt(p * (1.0 - p) / k + z2 / (4.0 * k * k)) / denom;
    r.frequency = p;
    r.low = std::max(0.0, centre - spread);
    r.high = std::min(1.0, centre + spread);
    r.half_width = (r.high - r.low) / 2.0;
    return r;
}

double exact_mono_probability(int n, int n_ground) {
    if (n_ground < 0 || n_ground > 4) throw ArgumentError("exact probability needs 0 <= N <= 4");
    const std::uint64_t size = std::uint64_t{1} << n_ground;
    const std::uint64_t total = std::uint64_t{1} << size;
    std::uint64_t hits = 0;
    for (std::uint64_t word = 0; word < total; ++word) {
        Coloring c = Coloring::filled(n_ground, Color::Blue);
        for (std::uint64_t s = 0; s < size; ++s) {
            if ((word >> s) & 1U) c.set(s, Color::Red);
        }
        if (has_mono_copy(c, n)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

int default_ground(int n, LogBase base) {
    if (n < 2) throw DomainError("3 n log n needs n >= 2");
    if (base == LogBase::Two && std::has_single_bit(static_cast<unsigned>(n))) {
        return 3 * n * std::countr_zero(static_cast<unsigned>(n));
    }
    // log n is irrational here, so the product is never an integer.
    const double v = 3.0 * n * (base == LogBase::Two ? std::log2(n) : std::log(n));
    return static_cast<int>(std::ceil(v));
}

namespace {

struct Context {
    std::filesystem::path dir;
    std::uint64_t seed;
    int worker_count;
    std::optional<std::uint64_t> node_cap;
    ExperimentReport report;

    void artifact(const std::string& file, const Json& j) {
        write_json(dir / file, j);
        report.artifacts.push_back(file);
    }

    SearchOutcome search(int ground, int m, int n) const {
        SearchProblem p;
        p.ground = ground;
        p.red_m = m;
        p.blue_n = n;
        p.node_cap = node_cap;
        p.worker_count = worker_count;
        return search_good_coloring(p);
    }

    /// Runs the search and stores the matching certificate. Returns the tag.
    SearchTag searched(const std::string& stem, int ground, int m, int n) {
        const auto out = search(ground, m, n);
        Json& rec = report.outcome["searches"].emplace_back(
            Json{{"ground", ground}, {"red_m", m}, {"blue_n", n}, {"tag", to_string(out.tag)},
                 {"nodes", out.stats.nodes}, {"seconds", out.stats.wall_seconds}});
        if (out.tag == SearchTag::Witness) {
            artifact(stem + ".json", to_json(witness_file(*out.witness, m, n)));
        } else if (out.tag == SearchTag::Exhausted) {
            artifact(stem + ".json", to_json(ExhaustedFile{ground, m, n, false, out.stats.nodes}));
        }
        rec["certificate"] = out.tag == SearchTag::CapHit ? Json(nullptr) : Json(stem + ".json");
        return out.tag;
    }
};

bool check_thm8_lower(Context& ctx) {
    const Coloring parity = parity_coloring(4);
    const bool good = verify_witness(parity, 2, 3);
    ctx.artifact("parity-witness.json", to_json(witness_file(parity, 2, 3)));
    ctx.report.outcome["parity_is_good"] = good;
    return good;
}

bool check_q2q2(Context& ctx) {
    const bool at3 = ctx.searched("n3-witness", 3, 2, 2) == SearchTag::Witness;
    const bool at4 = ctx.searched("n4-exhausted", 4, 2, 2) == SearchTag::Exhausted;
    const bool raw = good_coloring_exists_brute_force(4, 2, 2, false);
    ctx.report.outcome["raw_enumeration_n4_good_exists"] = raw;
    return at3 && at4 && !raw;
}

bool check_q1qn(Context& ctx) {
    bool ok = true;
    for (int n = 2; n <= 3; ++n) {
        Coloring top_red = constant_coloring(n, Color::Blue);
        top_red.set(top_red.top(), Color::Red);
        const bool good = verify_witness(top_red, 1, n);
        ctx.artifact("n" + std::to_string(n) + "-top-red.json", to_json(witness_file(top_red, 1, n)));
        ctx.report.outcome["top_red_good"].push_back(good);
        ok = ok && good;
        const std::string stem = "q1q" + std::to_string(n) + "-N";
        ok = ok && ctx.searched(stem + std::to_string(n), n, 1, n) == SearchTag::Witness;
        ok = ok && ctx.searched(stem + std::to_string(n + 1), n + 1, 1, n) == SearchTag::Exhausted;
    }
    return ok;
}

bool check_thm8_upper(Context& ctx) { return ctx.searched("n5-exhausted", 5, 2, 3) == SearchTag::Exhausted; }

struct BlobShape {
    int n, m, a, b, min_ground;
};

std::vector<BlobShape> blob_shapes(int max_ground) {
    std::vector<BlobShape> shapes;
    for (int n = 1; n <= 4; ++n) {
        for (int m = 1; m <= 3; ++m) {
            for (int a = 0; a <= n; ++a) {
                for (int b = 0; a + b <= n; ++b) {
                    const int need = n + (n + 1 - a - b) * m;
                    if (need <= max_ground) shapes.push_back({n, m, a, b, need});
                }
            }
        }
    }
    return shapes;
}

/// Random spec of the given shape: n' = n, identity base injection, and the
/// remaining elements shuffled into blocks of at least m elements.
BlobSpec random_spec(const BlobShape& shape, int ground, SplitMix64& rng) {
    BlobSpec spec;
    spec.ground = ground;
    spec.n = shape.n;
    spec.n_prime = shape.n;
    spec.m = shape.m;
    spec.a = shape.a;
    spec.b = shape.b;
    spec.base_injection = BlobSpec::identity_injection(shape.n);
    std::vector<int> rest(static_cast<std::size_t>(ground - shape.n));
    std::iota(rest.begin(), rest.end(), shape.n);
    for (std::size_t i = rest.size(); i > 1; --i) std::swap(rest[i - 1], rest[rng.next() % i]);
    const int k = spec.blocks();
    if (k <= 0) return spec;
    std::vector<int> sizes(static_cast<std::size_t>(k), shape.m);
    for (int extra = ground - shape.min_ground; extra > 0; --extra) ++sizes[rng.next() % sizes.size()];
    std::size_t next = 0;
    for (int size : sizes) {
        std::uint64_t bits = 0;
        for (int i = 0; i < size; ++i) bits |= std::uint64_t{1} << rest[next++];
        spec.partition.emplace_back(bits, ground);
    }
    return spec;
}

bool check_lemma1(Context& ctx) {
    constexpr int kMaxGround = 10;
    constexpr std::uint64_t kWanted = 10'000;
    constexpr std::uint64_t kMaxDraws = 2'000'000;
    const auto shapes = blob_shapes(kMaxGround);
    std::uint64_t accepted = 0, draws = 0, failures = 0, blue = 0, red = 0;
    std::optional<CopyFile> first_blue, first_red;
    std::string first_failure;
    for (; accepted < kWanted && draws < kMaxDraws; ++draws) {
        SplitMix64 rng(derive_seed(ctx.seed, draws));
        const BlobShape& shape = shapes[rng.next() % shapes.size()];
        const int ground = shape.min_ground + static_cast<int>(rng.next() % (kMaxGround - shape.min_ground + 1));
        const BlobSpec spec = random_spec(shape, ground, rng);
        const Coloring c = random_coloring(ground, rng.next());
        if (!check_hypotheses(spec, c)) continue;
        ++accepted;
        try {
            const BlobOutcome out = blob_embed(spec, c);
            if (!verify_copy(out.cert, c)) throw DefectError("certificate does not verify");
            auto& slot = out.tag == BlobTag::BlueCopy ? first_blue : first_red;
            ++(out.tag == BlobTag::BlueCopy ? blue : red);
            if (!slot) slot = copy_file(out.cert, &c);
        } catch (const std::exception& e) {
            if (failures++ == 0) first_failure = "draw " + std::to_string(draws) + ": " + e.what();
        }
    }
    if (first_blue) ctx.artifact("sample-blue-copy.json", to_json(*first_blue));
    if (first_red) ctx.artifact("sample-red-copy.json", to_json(*first_red));
    auto& o = ctx.report.outcome;
    o["accepted"] = accepted;
    o["draws"] = draws;
    o["blue_copies"] = blue;
    o["red_copies"] = red;
    o["failures"] = failures;
    if (failures) o["first_failure"] = first_failure;
    return accepted == kWanted && failures == 0;
}

bool check_bounds_table(Context& ctx) {
    std::ostringstream sink;
    const auto rows = bounds_table(100, sink, TableFormat::Text);
    BoundsTableFile file{100, Json::array()};
    bool consistent = true;
    for (const auto& r : rows) {
        file.rows.push_back({{"m", r.m}, {"n", r.n}, {"lower", r.value.lower}, {"upper", r.value.upper}});
        consistent = consistent && r.value.lower <= r.value.upper;
    }
    ctx.artifact("bounds-table.json", to_json(file));
    const std::vector<std::tuple<int, int, std::int64_t, std::int64_t>> expected = {
        {1, 5, 6, 6}, {2, 2, 4, 4}, {2, 3, 5, 5}, {3, 3, 7, 8}};
    bool examples = true;
    for (const auto& [m, n, lo, hi] : expected) {
        const Bounds b = bounds(m, n);
        ctx.report.outcome["examples"].push_back({{"m", m}, {"n", n}, {"lower", b.lower}, {"upper", b.upper}});
        examples = examples && b.lower == lo && b.upper == hi;
    }
    ctx.report.outcome["lower_le_upper"] = consistent;
    return consistent && examples;
}

bool check_cnf_agreement(Context& ctx) {
    AgreementFile file{Json::array()};
    bool ok = true;
    for (int ground = 1; ground <= 4; ++ground) {
        for (int m = 1; m <= 3; ++m) {
            for (int n = 1; n <= 3; ++n) {
                const bool sat = solve_cnf_exhaustive(build_cnf(ground, m, n, false)).has_value();
                const SearchTag tag = ctx.search(ground, m, n).tag;
                ok = ok && tag != SearchTag::CapHit && sat == (tag == SearchTag::Witness);
                file.rows.push_back(
                    {{"ground", ground}, {"m", m}, {"n", n}, {"sat", sat}, {"search", to_string(tag)}});
            }
        }
    }
    ctx.artifact("agreement.json", to_json(file));
    ctx.report.outcome["instances"] = file.rows.size();
    return ok;
}

bool check_mc(Context& ctx) {
    const std::uint64_t s1 = derive_seed(ctx.seed, 0);
    const std::uint64_t s2 = derive_seed(ctx.seed, 1);
    const McResult small = mc_mono_frequency(2, 2, 10'000, s1);
    const McResult large = mc_mono_frequency(2, 6, 1'000, s2);
    const double exact = exact_mono_probability(2, 2);
    ctx.artifact("mc-n2-N2.json", to_json(McFile{2, 2, small.trials, s1, small.hits}));
    ctx.artifact("mc-n2-N6.json", to_json(McFile{2, 6, large.trials, s2, large.hits}));
    auto& o = ctx.report.outcome;
    o["n2_N2"] = {{"frequency", small.frequency}, {"low", small.low}, {"high", small.high}, {"exact", exact}};
    o["n2_N6"] = {{"frequency", large.frequency}, {"low", large.low}, {"high", large.high}};
    o["N6_is_default_ground"] = default_ground(2, LogBase::Two) == 6;
    return small.low <= exact && exact <= small.high && large.frequency >= 0.99;
}

bool check_cert_integrity(Context& ctx) {
    const Coloring parity = parity_coloring(4);
    WitnessFile w = witness_file(parity, 2, 3);
    ctx.artifact("parity-witness.json", to_json(w));
    const bool clean = verify_cert_file(ctx.dir / "parity-witness.json").ok;

    // Coloring the empty set red adds the red Q_2 {} < {1},{2} < {1,2,3}.
    WitnessFile mutated = w;
    mutated.colors[0] = 'R';
    write_json(ctx.dir / "mutated" / "parity-witness.json", to_json(mutated));
    const CertCheck flipped = verify_cert_file(ctx.dir / "mutated" / "parity-witness.json");

    mutated.colors[0] = 'X';
    write_json(ctx.dir / "mutated" / "bad-char.json", to_json(mutated));
    const CertCheck bad_char = verify_cert_file(ctx.dir / "mutated" / "bad-char.json");

    const auto copy = find_mono_copy(parity, 2, Color::Blue);
    bool copy_ok = false, copy_mutation_caught = false;
    if (copy) {
        ctx.artifact("parity-blue-q2.json", to_json(copy_file(*copy, &parity)));
        copy_ok = verify_cert_file(ctx.dir / "parity-blue-q2.json").ok;
        CopyFile broken = copy_file(*copy, &parity);
        broken.cert.images[1] ^= 1;
        copy_mutation_caught = !check_certificate(broken).ok;
    }

    bool malformed_rejected = false;
    {
        std::ofstream(ctx.dir / "mutated" / "malformed.json") << "{\"kind\": \"witness\", \"ground\": ";
        try {
            verify_cert_file(ctx.dir / "mutated" / "malformed.json");
        } catch (const ParseError&) {
            malformed_rejected = true;
        }
    }
    auto& o = ctx.report.outcome;
    o["clean_witness_verifies"] = clean;
    o["flipped_witness_rejected"] = !flipped.ok;
    o["flipped_witness_diagnostics"] = flipped.diagnostics;
    o["bad_char_rejected"] = !bad_char.ok;
    o["copy_verifies"] = copy_ok;
    o["mutated_copy_rejected"] = copy_mutation_caught;
    o["malformed_rejected"] = malformed_rejected;
    return clean && !flipped.ok && !bad_char.ok && copy_ok && copy_mutation_caught && malformed_rejected;
}

struct Entry {
    CheckInfo info;
    std::function<bool(Context&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {{"thm8-lower", "parity coloring of Q_4 has no red Q_2 and no blue Q_3", false}, check_thm8_lower},
        {{"thm1v-q2q2", "R(Q_2,Q_2) = 4: witness at N=3, exhausted at N=4, raw enumeration agrees", false},
         check_q2q2},
        {{"thm1ii-q1qn", "R(Q_1,Q_n) = n+1 for n = 2, 3", false}, check_q1qn},
        {{"thm8-upper", "R(Q_2,Q_3) <= 5: exhaustive search at N=5", true}, check_thm8_upper},
        {{"lemma1-totality", "blob embedding on 10^4 random colorings meeting the hypotheses", false},
         check_lemma1},
        {{"bounds-table", "bound formulas for m <= n <= 100 and the known values", false}, check_bounds_table},
        {{"cnf-agreement", "CNF satisfiability equals search outcome for N <= 4, m, n <= 3", false},
         check_cnf_agreement},
        {{"mc-thm1vi", "Monte Carlo frequency of monochromatic Q_2", false}, check_mc},
        {{"cert-integrity", "stored certificates re-verify and mutations are caught", false}, check_cert_integrity},
    };
    return list;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

ExperimentReport reproduce(const std::string& check_name, const ReproduceOptions& options) {
    const auto& list = entries();
    const auto it = std::find_if(list.begin(), list.end(), [&](const Entry& e) { return e.info.name == check_name; });
    if (it == list.end()) throw UsageError("unknown check \"" + check_name + "\"");
    const auto index = static_cast<std::uint64_t>(it - list.begin());
    Context ctx{options.out_dir / check_name, derive_seed(options.seed, index), options.worker_count,
                options.node_cap, {}};
    std::filesystem::create_directories(ctx.dir);
    ctx.report.name = check_name;
    ctx.report.seed = ctx.seed;
    ctx.report.tool_version = std::string(kVersion);
    ctx.report.parameters = {{"base_seed", options.seed}, {"workers", options.worker_count}};
    if (options.node_cap) ctx.report.parameters["node_cap"] = *options.node_cap;
    try {
        ctx.report.passed = it->run(ctx);
    } catch (const std::exception& e) {
        ctx.report.passed = false;
        ctx.report.outcome["error"] = e.what();
    }
    write_json(ctx.dir / "report.json", to_json(ctx.report));
    return ctx.report;
}

std::vector<ExperimentReport> reproduce_many(const std::vector<std::string>& names,
                                             const ReproduceOptions& options, bool parallel) {
    for (const auto& name : names) {
        const auto& reg = check_registry();
        if (std::none_of(reg.begin(), reg.end(), [&](const CheckInfo& c) { return c.name == name; })) {
            throw UsageError("unknown check \"" + name + "\"");
        }
    }
    std::vector<ExperimentReport> reports;
    if (!parallel) {
        for (const auto& name : names) reports.push_back(reproduce(name, options));
        return reports;
    }
    std::vector<std::future<ExperimentReport>> jobs;
    for (const auto& name : names) jobs.push_back(std::async(std::launch::async, [&, name] { return reproduce(name, options); }));
    for (auto& job : jobs) reports.push_back(job.get());
    return reports;
}

}  // namespace qramsey
