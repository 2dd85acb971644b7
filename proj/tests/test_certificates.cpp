#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qramsey/certificates.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/search.hpp"

using namespace qramsey;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qramsey-test-certificates";
    fs::create_directories(dir);
    return dir / name;
}

Certificate round_trip(const Certificate& c) { return parse_certificate(Json::parse(to_json(c).dump())); }

}  // namespace

TEST_CASE("witness file layout") {
    const WitnessFile w = witness_file(parity_coloring(4), 2, 3);
    const Json j = to_json(w);
    CHECK(j.dump() ==
          R"({"kind":"witness","ground":4,"red_m":2,"blue_n":3,"hat":false,"colors":"BRRBRBBRRBBRBRRB"})");
    const auto back = std::get<WitnessFile>(round_trip(w));
    CHECK(back.colors == w.colors);
    CHECK(back.red_m == 2);
    CHECK(check_certificate(w).ok);
}

TEST_CASE("damaged witnesses are rejected with a reason") {
    WitnessFile w = witness_file(parity_coloring(4), 2, 3);
    w.colors[0] = 'R';
    const CertCheck red = check_certificate(w);
    CHECK_FALSE(red.ok);
    CHECK(red.diagnostics.find("red Q_2") != std::string::npos);

    w.colors[0] = 'Q';
    CHECK_FALSE(check_certificate(w).ok);
    w.colors = "BRR";
    CHECK_FALSE(check_certificate(w).ok);
}

TEST_CASE("single flips of the parity witness, against the naive oracle") {
    // Not every flip breaks the witness: flipping {1} keeps it good.
    const Coloring parity = parity_coloring(4);
    int still_good = 0;
    for (std::uint64_t s = 0; s < 16; ++s) {
        Coloring c = parity;
        c.set(s, opposite(*parity.sole_color(s)));
        const bool naive = !oracle::has_mono_copy(c, 2, Color::Red) && !oracle::has_mono_copy(c, 3, Color::Blue);
        CHECK(check_certificate(witness_file(c, 2, 3)).ok == naive);
        still_good += naive;
        if (s == 0b0001) CHECK(naive);
        if (s == 0) CHECK_FALSE(naive);
    }
    CHECK(still_good > 0);
    CHECK(still_good < 16);
}

TEST_CASE("exhaustion records are structural only") {
    const ExhaustedFile e{5, 2, 3, false, 880218};
    const auto back = std::get<ExhaustedFile>(round_trip(e));
    CHECK(back.nodes == 880218);
    const CertCheck c = check_certificate(e);
    CHECK(c.ok);
    CHECK(c.diagnostics.find("re-running") != std::string::npos);
    CHECK_FALSE(check_certificate(ExhaustedFile{5, 2, 3, false, 0}).ok);
}

TEST_CASE("copy certificates") {
    const Coloring p = parity_coloring(4);
    const auto cert = find_mono_copy(p, 2, Color::Blue);
    REQUIRE(cert);
    const CopyFile f = copy_file(*cert, &p);
    const Json j = to_json(f);
    CHECK(j["color"] == "blue");
    CHECK(j["map"].size() == 4);
    CHECK(j["map"][0][0] == 0);
    const auto back = std::get<CopyFile>(round_trip(f));
    CHECK(back.cert == *cert);
    CHECK(check_certificate(back).ok);

    CopyFile uncolored = copy_file(*cert);
    CHECK(to_json(uncolored).contains("colors") == false);
    CHECK(check_certificate(uncolored).ok);

    CopyFile wrong_color = f;
    wrong_color.cert.color_claim = Color::Red;
    CHECK_FALSE(check_certificate(wrong_color).ok);

    CopyFile not_copy = f;
    not_copy.cert.images[1] = not_copy.cert.images[3];
    CHECK_FALSE(check_certificate(not_copy).ok);
}

TEST_CASE("structural parse errors") {
    CHECK_THROWS_AS(parse_certificate(Json::parse(R"({"ground":4})")), ParseError);
    CHECK_THROWS_AS(parse_certificate(Json::parse(R"({"kind":"nope"})")), ParseError);
    CHECK_THROWS_AS(parse_certificate(Json::parse(R"({"kind":"witness","ground":"4","red_m":2,"blue_n":3,"hat":false,"colors":""})")),
                    ParseError);
    CHECK_THROWS_AS(parse_certificate(Json::parse(R"({"kind":"copy","ground":2,"dim":1,"color":null,"map":[[0,0]]})")),
                    ParseError);
    CHECK_THROWS_AS(
        parse_certificate(Json::parse(R"({"kind":"copy","ground":2,"dim":1,"color":null,"map":[[0,0],[0,1]]})")),
        ParseError);
    CHECK_THROWS_AS(
        parse_certificate(Json::parse(R"({"kind":"copy","ground":2,"dim":1,"color":"green","map":[[0,0],[1,1]]})")),
        ParseError);
}

TEST_CASE("files on disk") {
    const fs::path good = scratch("parity.json");
    write_json(good, to_json(witness_file(parity_coloring(4), 2, 3)));
    CHECK(verify_cert_file(good).ok);

    const fs::path bad = scratch("malformed.json");
    std::ofstream(bad) << "{\"kind\": ";
    CHECK_THROWS_AS(verify_cert_file(bad), ParseError);
    CHECK_THROWS_AS(verify_cert_file(scratch("missing.json")), ParseError);
}

TEST_CASE("blob spec JSON") {
    BlobSpec s;
    s.ground = 5;
    s.n = 1;
    s.n_prime = 1;
    s.m = 2;
    s.partition = {ElementSet::of({2, 3}, 5), ElementSet::of({4, 5}, 5)};
    s.base_injection = BlobSpec::identity_injection(1);
    const Json j = blob_spec_to_json(s);
    CHECK(j["partition"] == Json::parse("[[2,3],[4,5]]"));
    const BlobSpec back = blob_spec_from_json(j);
    CHECK(back.partition == s.partition);
    CHECK(back.base_injection == s.base_injection);

    Json no_injection = j;
    no_injection.erase("injection");
    CHECK(blob_spec_from_json(no_injection).base_injection == s.base_injection);

    Json out_of_range = j;
    out_of_range["partition"] = Json::parse("[[2,3],[4,9]]");
    CHECK_THROWS_AS(blob_spec_from_json(out_of_range), ParseError);
}

TEST_CASE("experiment reports round trip") {
    ExperimentReport r;
    r.name = "thm8-lower";
    r.parameters = {{"base_seed", 1}, {"workers", 1}};
    r.outcome = {{"parity_is_good", true}, {"nested", {{"a", 1.5}}}};
    r.passed = true;
    r.artifacts = {"parity-witness.json"};
    r.seed = 12345678901234567890ULL;
    r.tool_version = "0.1.0";
    CHECK(parse_report(Json::parse(to_json(r).dump())) == r);
    r.seed.reset();
    CHECK(std::get<ExperimentReport>(round_trip(r)) == r);
}

TEST_CASE("reports re-check their artifacts") {
    const fs::path dir = scratch("report");
    fs::create_directories(dir);
    write_json(dir / "w.json", to_json(witness_file(parity_coloring(4), 2, 3)));
    ExperimentReport r;
    r.name = "x";
    r.passed = true;
    r.artifacts = {"w.json"};
    r.tool_version = "0.1.0";
    write_json(dir / "report.json", to_json(r));
    CHECK(verify_cert_file(dir / "report.json").ok);

    WitnessFile broken = witness_file(parity_coloring(4), 2, 3);
    broken.colors[0] = 'R';
    write_json(dir / "w.json", to_json(broken));
    CHECK_FALSE(verify_cert_file(dir / "report.json").ok);

    r.artifacts = {"absent.json"};
    write_json(dir / "report.json", to_json(r));
    CHECK_FALSE(verify_cert_file(dir / "report.json").ok);
}
