#include "qramsey/certificates.hpp"

#include <fstream>
#include <sstream>

#include "qramsey/bounds.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/harness.hpp"
#include "qramsey/search.hpp"
#include "qramsey/version.hpp"

namespace qramsey {

namespace {

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("field \"") + key + "\" has the wrong type");
    }
}

int small_int(const Json& j, const char* key, int lo, int hi) {
    const auto v = field<std::int64_t>(j, key);
    if (v < lo || v > hi) {
        throw ParseError(std::string("field \"") + key + "\" out of range [" + std::to_string(lo) + "," +
                         std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
}

std::string describe(const CopyCert& cert, Color color) {
    std::ostringstream out;
    out << to_string(color) << " Q_" << cert.dim << ":";
    for (const auto& [src, img] : cert.map()) out << ' ' << render(src) << "->" << render(img);
    return out.str();
}

std::optional<Coloring> decode_colors(int ground, const std::string& colors, bool hat, std::string& why) {
    try {
        return from_string(ground, colors, hat);
    } catch (const std::exception& e) {
        why = std::string("coloring is not well formed: ") + e.what();
        return std::nullopt;
    }
}

CertCheck check(const WitnessFile& w) {
    std::string why;
    auto c = decode_colors(w.ground, w.colors, w.hat, why);
    if (!c) return {false, why};
    if (auto red = find_mono_copy(*c, w.red_m, Color::Red)) return {false, "found " + describe(*red, Color::Red)};
    if (auto blue = find_mono_copy(*c, w.blue_n, Color::Blue)) {
        return {false, "found " + describe(*blue, Color::Blue)};
    }
    return {true, "no red Q_" + std::to_string(w.red_m) + " and no blue Q_" + std::to_string(w.blue_n) +
                      " in Q_" + std::to_string(w.ground)};
}

CertCheck check(const ExhaustedFile& e) {
    if (e.nodes == 0) return {false, "exhaustion record with zero nodes"};
    return {true, "structure ok; exhaustion itself can only be confirmed by re-running the search"};
}

CertCheck check(const CopyFile& f) {
    std::optional<Coloring> c;
    if (f.colors) {
        std::string why;
        c = decode_colors(f.cert.ground_width, *f.colors, f.hat, why);
        if (!c) return {false, why};
    }
    std::optional<std::string> defect;
    try {
        defect = copy_defect(f.cert, c ? &*c : nullptr);
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
    if (defect) return {false, *defect};
    std::string note = "copy of Q_" + std::to_string(f.cert.dim) + " in Q_" + std::to_string(f.cert.ground_width);
    if (f.cert.color_claim && !c) note += "; color not checked (no coloring in file)";
    return {true, note};
}

CertCheck check(const McFile& m) {
    McResult r;
    try {
        r = mc_mono_frequency(m.n, m.ground, m.trials, m.seed);
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
    if (r.hits != m.hits) {
        return {false, "recomputed " + std::to_string(r.hits) + " hits, file says " + std::to_string(m.hits)};
    }
    return {true, "recomputed " + std::to_string(r.hits) + "/" + std::to_string(r.trials) + " hits"};
}

CertCheck check(const BoundsTableFile& t) {
    if (t.max_n < 1 || t.max_n > 100) return {false, "max_n out of range"};
    if (!t.rows.is_array() || t.rows.size() != static_cast<std::size_t>(t.max_n * (t.max_n + 1) / 2)) {
        return {false, "wrong number of rows"};
    }
    for (const auto& row : t.rows) {
        const int m = small_int(row, "m", 1, 100);
        const int n = small_int(row, "n", 1, 100);
        const Bounds b = bounds(m, n);
        if (field<std::int64_t>(row, "lower") != b.lower || field<std::int64_t>(row, "upper") != b.upper) {
            return {false, "row (" + std::to_string(m) + "," + std::to_string(n) + ") disagrees with recomputation"};
        }
        if (b.lower > b.upper) return {false, "lower exceeds upper"};
    }
    return {true, std::to_string(t.rows.size()) + " rows recomputed"};
}

CertCheck check(const AgreementFile& a) {
    if (!a.rows.is_array()) return {false, "rows must be an array"};
    for (const auto& row : a.rows) {
        const int ground = small_int(row, "ground", 0, 4);
        const int m = small_int(row, "m", 1, 3);
        const int n = small_int(row, "n", 1, 3);
        const bool sat = field<bool>(row, "sat");
        const auto tag = field<std::string>(row, "search");
        const bool recomputed_sat = solve_cnf_exhaustive(build_cnf(ground, m, n, false)).has_value();
        SearchProblem p;
        p.ground = ground;
        p.red_m = m;
        p.blue_n = n;
        const auto outcome = search_good_coloring(p);
        const std::string id = "(" + std::to_string(ground) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
        if (recomputed_sat != sat || tag != to_string(outcome.tag)) return {false, id + " disagrees with recomputation"};
        if (sat != (outcome.tag == SearchTag::Witness)) return {false, id + " CNF and search disagree"};
    }
    return {true, std::to_string(a.rows.size()) + " instances recomputed"};
}

CertCheck check(const ExperimentReport& r, const std::filesystem::path& base) {
    std::string notes;
    bool ok = r.passed;
    if (!r.passed) notes = "report records a failed check";
    for (const auto& artifact : r.artifacts) {
        CertCheck sub;
        try {
            sub = verify_cert_file(base / artifact);
        } catch (const ParseError& e) {
            sub = {false, std::string("unreadable: ") + e.what()};
        }
        ok = ok && sub.ok;
        notes += (notes.empty() ? "" : "\n") + artifact + ": " + (sub.ok ? "ok" : "FAILED") + " (" + sub.diagnostics + ")";
    }
    return {ok, notes};
}

}  // namespace

Json to_json(const WitnessFile& w) {
    return Json{{"kind", "witness"}, {"ground", w.ground}, {"red_m", w.red_m},
                {"blue_n", w.blue_n}, {"hat", w.hat},      {"colors", w.colors}};
}

Json to_json(const ExhaustedFile& e) {
    return Json{{"kind", "exhausted"}, {"ground", e.ground}, {"red_m", e.red_m},
                {"blue_n", e.blue_n},  {"hat", e.hat},       {"nodes", e.nodes}};
}

Json to_json(const CopyFile& c) {
    Json j{{"kind", "copy"}, {"ground", c.cert.ground_width}, {"dim", c.cert.dim}};
    j["color"] = c.cert.color_claim ? Json(std::string(to_string(*c.cert.color_claim))) : Json(nullptr);
    Json map = Json::array();
    for (std::size_t src = 0; src < c.cert.images.size(); ++src) map.push_back({src, c.cert.images[src]});
    j["map"] = std::move(map);
    if (c.colors) {
        j["hat"] = c.hat;
        j["colors"] = *c.colors;
    }
    return j;
}

Json to_json(const McFile& m) {
    return Json{{"kind", "mc"},         {"n", m.n},       {"ground", m.ground},
                {"trials", m.trials}, {"seed", m.seed}, {"hits", m.hits}};
}

Json to_json(const BoundsTableFile& t) {
    return Json{{"kind", "bounds-table"}, {"max_n", t.max_n}, {"rows", t.rows}};
}

Json to_json(const AgreementFile& a) { return Json{{"kind", "cnf-agreement"}, {"rows", a.rows}}; }

Json to_json(const ExperimentReport& r) {
    Json j{{"kind", "report"},     {"name", r.name},           {"parameters", r.parameters},
           {"outcome", r.outcome}, {"passed", r.passed},       {"artifacts", r.artifacts}};
    j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    j["tool_version"] = r.tool_version;
    return j;
}

Json to_json(const Certificate& cert) {
    return std::visit([](const auto& c) { return to_json(c); }, cert);
}

WitnessFile witness_file(const Coloring& c, int m, int n) {
    return {c.width(), m, n, c.hat(), c.render()};
}

CopyFile copy_file(const CopyCert& cert, const Coloring* colors) {
    CopyFile f{cert, std::nullopt, false};
    if (colors) {
        f.colors = colors->render();
        f.hat = colors->hat();
    }
    return f;
}

ExperimentReport parse_report(const Json& j) {
    ExperimentReport r;
    r.name = field<std::string>(j, "name");
    r.parameters = field<Json>(j, "parameters");
    r.outcome = field<Json>(j, "outcome");
    r.passed = field<bool>(j, "passed");
    r.artifacts = field<std::vector<std::string>>(j, "artifacts");
    if (j.contains("seed") && !j.at("seed").is_null()) r.seed = field<std::uint64_t>(j, "seed");
    r.tool_version = field<std::string>(j, "tool_version");
    return r;
}

Certificate parse_certificate(const Json& j) {
    const auto kind = field<std::string>(j, "kind");
    if (kind == "witness" || kind == "exhausted") {
        const int ground = small_int(j, "ground", 0, kMaxColoringWidth);
        const int m = small_int(j, "red_m", 1, 64);
        const int n = small_int(j, "blue_n", 1, 64);
        const bool hat = field<bool>(j, "hat");
        if (kind == "witness") return WitnessFile{ground, m, n, hat, field<std::string>(j, "colors")};
        return ExhaustedFile{ground, m, n, hat, field<std::uint64_t>(j, "nodes")};
    }
    if (kind == "copy") {
        CopyFile f;
        f.cert.ground_width = small_int(j, "ground", 0, kMaxWidth);
        f.cert.dim = small_int(j, "dim", 0, 20);
        if (!j.contains("color")) throw ParseError("missing field \"color\"");
        if (!j.at("color").is_null()) {
            f.cert.color_claim = parse_color(field<std::string>(j, "color"));
        }
        const auto pairs = field<std::vector<std::pair<std::uint64_t, std::uint64_t>>>(j, "map");
        const std::size_t count = std::size_t{1} << f.cert.dim;
        if (pairs.size() != count) throw ParseError("map must have 2^dim entries");
        f.cert.images.assign(count, 0);
        std::vector<bool> seen(count, false);
        for (const auto& [src, img] : pairs) {
            if (src >= count || seen[src]) throw ParseError("map sources must be each subset of [dim] once");
            seen[src] = true;
            f.cert.images[src] = img;
        }
        if (j.contains("colors")) {
            f.colors = field<std::string>(j, "colors");
            f.hat = j.contains("hat") && field<bool>(j, "hat");
        }
        return f;
    }
    if (kind == "mc") {
        return McFile{small_int(j, "n", 0, 64), small_int(j, "ground", 0, 64), field<std::uint64_t>(j, "trials"),
                      field<std::uint64_t>(j, "seed"), field<std::uint64_t>(j, "hits")};
    }
    if (kind == "bounds-table") return BoundsTableFile{small_int(j, "max_n", 1, 100), field<Json>(j, "rows")};
    if (kind == "cnf-agreement") return AgreementFile{field<Json>(j, "rows")};
    if (kind == "report") return parse_report(j);
    throw ParseError("unknown certificate kind \"" + kind + "\"");
}

Json blob_spec_to_json(const BlobSpec& spec) {
    Json partition = Json::array();
    for (const auto& x : spec.partition) partition.push_back(x.elements());
    Json injection = Json::array();
    for (std::size_t s = 0; s < spec.base_injection.size(); ++s) injection.push_back({s, spec.base_injection[s]});
    return Json{{"ground", spec.ground}, {"n", spec.n}, {"n_prime", spec.n_prime}, {"m", spec.m},
                {"a", spec.a},           {"b", spec.b}, {"partition", partition}, {"injection", injection}};
}

BlobSpec blob_spec_from_json(const Json& j) {
    BlobSpec spec;
    spec.ground = small_int(j, "ground", 0, kMaxColoringWidth);
    spec.n = small_int(j, "n", 0, 20);
    spec.n_prime = small_int(j, "n_prime", 0, spec.ground);
    spec.m = small_int(j, "m", 0, 20);
    spec.a = small_int(j, "a", 0, spec.n + 1);
    spec.b = small_int(j, "b", 0, spec.n + 1);
    for (const auto& block : field<std::vector<std::vector<int>>>(j, "partition")) {
        std::uint64_t bits = 0;
        for (int e : block) {
            if (e < 1 || e > spec.ground) throw ParseError("partition element " + std::to_string(e) + " outside [N]");
            bits |= std::uint64_t{1} << (e - 1);
        }
        spec.partition.emplace_back(bits, spec.ground);
    }
    if (j.contains("injection")) {
        const auto pairs = field<std::vector<std::pair<std::uint64_t, std::uint64_t>>>(j, "injection");
        const std::size_t count = std::size_t{1} << spec.n;
        if (pairs.size() != count) throw ParseError("injection must have 2^n entries");
        spec.base_injection.assign(count, 0);
        std::vector<bool> seen(count, false);
        for (const auto& [src, img] : pairs) {
            if (src >= count || seen[src]) throw ParseError("injection sources must be each subset of [n] once");
            seen[src] = true;
            spec.base_injection[src] = img;
        }
    } else {
        spec.base_injection = BlobSpec::identity_injection(spec.n);
    }
    return spec;
}

void write_json(const std::filesystem::path& path, const Json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

CertCheck check_certificate(const Certificate& cert, const std::filesystem::path& base) {
    return std::visit(
        [&](const auto& c) -> CertCheck {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, ExperimentReport>) {
                return check(c, base);
            } else {
                return check(c);
            }
        },
        cert);
}

CertCheck verify_cert_file(const std::filesystem::path& path) {
    return check_certificate(parse_certificate(read_json(path)), path.parent_path());
}

}  // namespace qramsey
