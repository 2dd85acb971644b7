#pragma once

// JSON certificate files: witnesses, exhaustion records, copy certificates,
// blob specs and experiment reports.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qramsey/blob.hpp"
#include "qramsey/coloring.hpp"
#include "qramsey/copies.hpp"

namespace qramsey {

using Json = nlohmann::ordered_json;

struct WitnessFile {
    int ground = 0;
    int red_m = 0;
    int blue_n = 0;
    bool hat = false;
    std::string colors;  // kept raw so a damaged word is reported, not rejected
};

struct ExhaustedFile {
    int ground = 0;
    int red_m = 0;
    int blue_n = 0;
    bool hat = false;
    std::uint64_t nodes = 0;
};

/// A copy certificate, optionally carrying the coloring it was found in.
struct CopyFile {
    CopyCert cert;
    std::optional<std::string> colors;
    bool hat = false;
};

/// Seeded Monte Carlo record; re-validated by recomputation.
struct McFile {
    int n = 0;
    int ground = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t hits = 0;
};

struct BoundsTableFile {
    int max_n = 0;
    Json rows;  // array of {m, n, lower, upper}
};

/// Search/CNF agreement rows; re-validated by recomputation.
struct AgreementFile {
    Json rows;  // array of {ground, m, n, sat, search}
};

struct ExperimentReport {
    std::string name;
    Json parameters = Json::object();
    Json outcome = Json::object();
    bool passed = false;
    std::vector<std::string> artifacts;  // relative to the report's directory
    std::optional<std::uint64_t> seed;
    std::string tool_version;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

using Certificate = std::variant<WitnessFile, ExhaustedFile, CopyFile, McFile, BoundsTableFile,
                                 AgreementFile, ExperimentReport>;

Json to_json(const WitnessFile& w);
Json to_json(const ExhaustedFile& e);
Json to_json(const CopyFile& c);
Json to_json(const McFile& m);
Json to_json(const BoundsTableFile& t);
Json to_json(const AgreementFile& a);
Json to_json(const ExperimentReport& r);
Json to_json(const Certificate& cert);

WitnessFile witness_file(const Coloring& c, int m, int n);
CopyFile copy_file(const CopyCert& cert, const Coloring* colors = nullptr);

/// Dispatches on "kind". Throws ParseError on structural problems.
Certificate parse_certificate(const Json& j);
ExperimentReport parse_report(const Json& j);

Json blob_spec_to_json(const BlobSpec& spec);
/// {"ground","n","n_prime","m","a","b","partition":[[..],..],"injection":[[src,img],..]};
/// elements are 1-based. "injection" may be omitted for the identity.
BlobSpec blob_spec_from_json(const Json& j);

/// Writes pretty JSON with a trailing newline, creating parent directories.
void write_json(const std::filesystem::path& path, const Json& j);
/// Throws ParseError for unreadable or malformed files.
Json read_json(const std::filesystem::path& path);

struct CertCheck {
    bool ok = false;
    std::string diagnostics;
};

/// Independent re-check of a certificate. Exhaustion records are checked for
/// structure only. Reports re-check every artifact they list, resolved
/// against `base`.
CertCheck check_certificate(const Certificate& cert, const std::filesystem::path& base = {});

/// Reads and checks one file. Throws ParseError when it does not parse.
CertCheck verify_cert_file(const std::filesystem::path& path);

}  // namespace qramsey
