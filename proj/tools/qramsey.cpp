// Command-line front end for the qramsey library.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qramsey/blob.hpp"
#include "qramsey/bounds.hpp"
#include "qramsey/certificates.hpp"
#include "qramsey/copies.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/harness.hpp"
#include "qramsey/search.hpp"
#include "qramsey/version.hpp"

namespace fs = std::filesystem;
using namespace qramsey;

namespace {

enum Exit : int {
    kOk = 0,
    kVerificationFailed = 2,
    kExhausted = 3,
    kCapHit = 4,
    kUsage = 64,
    kParse = 65,
};

struct Globals {
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
    std::optional<std::uint64_t> node_cap;
    std::string format = "text";
    std::string out;

    bool json() const { return format == "json"; }
    std::uint64_t cap() const { return node_cap.value_or(kDefaultNodeCap); }
};

void emit(const Globals& g, const Json& j, const std::string& text) {
    if (g.json()) {
        std::cout << j.dump() << '\n';
    } else {
        std::cout << text;
    }
}

void save(const Globals& g, const std::string& file, const Json& j) {
    if (g.out.empty()) return;
    const fs::path path = fs::path(g.out) / file;
    write_json(path, j);
    if (!g.json()) std::cout << "wrote " << path.string() << '\n';
}

std::string provenance_lines(const std::vector<std::string>& provenance) {
    std::string s;
    for (const auto& p : provenance) s += "  " + p + '\n';
    return s;
}

Coloring coloring_from_options(int ground, const std::string& word, const std::string& preset, bool hat,
                               std::uint64_t seed) {
    Coloring c;
    if (!word.empty()) {
        return from_string(ground, word, hat);
    } else if (preset == "parity") {
        c = parity_coloring(ground);
    } else if (preset == "red" || preset == "blue") {
        c = constant_coloring(ground, parse_color(preset));
    } else if (preset == "random") {
        c = random_coloring(ground, seed);
    } else {
        throw UsageError("unknown coloring preset \"" + preset + "\"");
    }
    return hat ? c.with_hat() : c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Search, certificates and bounds for Ramsey numbers of Boolean lattices"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Base seed for all randomness");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 256));
    app.add_option("--node-cap", g.node_cap, "Search node limit");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", g.out, "Directory for certificates and reports");

    std::function<int()> action;

    // bounds / table
    int bm = 0, bn = 0, table_n = 0;
    auto* bounds_cmd = app.add_subcommand("bounds", "Best known bounds on R(Q_m,Q_n)");
    bounds_cmd->add_option("m", bm);
    bounds_cmd->add_option("n", bn);
    bounds_cmd->add_option("--table", table_n, "Print all rows with m <= n <= max_n");
    auto run_table = [&](int max_n) {
        bounds_table(max_n, std::cout, g.json() ? TableFormat::JsonLines : TableFormat::Text);
        return kOk;
    };
    bounds_cmd->callback([&] {
        action = [&] {
            if (table_n > 0) return run_table(table_n);
            if (bm < 1 || bn < 1) throw UsageError("bounds needs m and n, or --table");
            const Bounds b = bounds(bm, bn);
            emit(g, {{"m", bm}, {"n", bn}, {"lower", b.lower}, {"upper", b.upper}, {"provenance", b.provenance}},
                 "(" + std::to_string(b.lower) + ", " + std::to_string(b.upper) + ")\n" +
                     provenance_lines(b.provenance));
            return kOk;
        };
    });
    auto* table_cmd = app.add_subcommand("table", "Bounds table for m <= n <= max_n");
    table_cmd->add_option("max_n", table_n)->required();
    table_cmd->callback([&] { action = [&] { return run_table(table_n); }; });

    auto* hat_cmd = app.add_subcommand("hat-bounds", "Upper bound on the hat variant");
    hat_cmd->add_option("m", bm)->required();
    hat_cmd->add_option("n", bn)->required();
    hat_cmd->callback([&] {
        action = [&] {
            const HatBounds h = hat_bounds(bm, bn);
            Json j{{"m", bm}, {"n", bn}, {"upper", h.upper ? Json(*h.upper) : Json(nullptr)},
                   {"provenance", h.provenance}};
            emit(g, j, (h.upper ? std::to_string(*h.upper) : std::string("no bound applies")) + "\n" +
                           provenance_lines(h.provenance));
            return kOk;
        };
    });

    // search
    int sN = 0, sm = 0, sn = 0;
    bool hat = false, no_sym = false, swap_sym = false, full_group = false;
    auto* search_cmd = app.add_subcommand("search", "Exhaustive search for a good coloring of Q_N");
    search_cmd->add_option("N", sN)->required();
    search_cmd->add_option("m", sm, "Forbidden red dimension")->required();
    search_cmd->add_option("n", sn, "Forbidden blue dimension")->required();
    search_cmd->add_flag("--hat", hat, "Empty set and [N] carry both colors");
    search_cmd->add_flag("--no-symmetry", no_sym, "Disable lex-leader pruning");
    search_cmd->add_flag("--color-swap", swap_sym, "Also break the color exchange (m == n only)");
    search_cmd->add_flag("--full-group", full_group, "Check all N! coordinate permutations");
    search_cmd->callback([&] {
        action = [&] {
            SearchProblem p;
            p.ground = sN;
            p.red_m = sm;
            p.blue_n = sn;
            p.hat = hat;
            p.symmetry = {!no_sym, swap_sym, full_group};
            p.node_cap = g.node_cap;
            p.worker_count = g.threads;
            const SearchOutcome out = search_good_coloring(p);
            Json j{{"tag", to_string(out.tag)}, {"ground", sN}, {"red_m", sm}, {"blue_n", sn}, {"hat", hat},
                   {"nodes", out.stats.nodes}, {"copy_prunes", out.stats.copy_prunes},
                   {"symmetry_prunes", out.stats.symmetry_prunes}, {"seconds", out.stats.wall_seconds}};
            std::ostringstream text;
            text << to_string(out.tag) << " nodes=" << out.stats.nodes << " seconds=" << out.stats.wall_seconds
                 << '\n';
            if (out.witness) {
                j["colors"] = out.witness->render();
                text << out.witness->render() << '\n';
                save(g, "witness.json", to_json(witness_file(*out.witness, sm, sn)));
            } else if (out.tag == SearchTag::Exhausted) {
                save(g, "exhausted.json", to_json(ExhaustedFile{sN, sm, sn, hat, out.stats.nodes}));
            }
            emit(g, j, text.str());
            switch (out.tag) {
                case SearchTag::Witness: return kOk;
                case SearchTag::Exhausted: return kExhausted;
                case SearchTag::CapHit: return kCapHit;
            }
            return kOk;
        };
    });

    // cnf
    std::string cnf_out;
    bool solve = false;
    auto* cnf_cmd = app.add_subcommand("cnf", "DIMACS encoding of the good-coloring problem");
    cnf_cmd->add_option("N", sN)->required();
    cnf_cmd->add_option("m", sm)->required();
    cnf_cmd->add_option("n", sn)->required();
    cnf_cmd->add_flag("--hat", hat);
    cnf_cmd->add_option("-o,--output", cnf_out, "Write DIMACS here instead of stdout");
    cnf_cmd->add_flag("--solve", solve, "Decide satisfiability by enumeration (at most 24 variables)");
    cnf_cmd->callback([&] {
        action = [&] {
            if (solve) {
                const auto model = solve_cnf_exhaustive(build_cnf(sN, sm, sn, hat));
                emit(g, {{"ground", sN}, {"m", sm}, {"n", sn}, {"sat", model.has_value()}},
                     std::string(model ? "SATISFIABLE" : "UNSATISFIABLE") + "\n");
                return model ? kOk : kExhausted;
            }
            CnfCounts counts;
            if (cnf_out.empty()) {
                counts = export_cnf(sN, sm, sn, hat, std::cout);
            } else {
                std::ofstream out(cnf_out);
                if (!out) throw std::runtime_error("cannot write " + cnf_out);
                counts = export_cnf(sN, sm, sn, hat, out);
                emit(g, {{"variables", counts.variables}, {"clauses", counts.clauses}},
                     "variables=" + std::to_string(counts.variables) + " clauses=" + std::to_string(counts.clauses) +
                         "\n");
            }
            return kOk;
        };
    });

    // decode-model
    std::string model_path;
    auto* decode_cmd = app.add_subcommand("decode-model", "Check a SAT solver model as a coloring");
    decode_cmd->add_option("N", sN)->required();
    decode_cmd->add_option("m", sm)->required();
    decode_cmd->add_option("n", sn)->required();
    decode_cmd->add_option("model", model_path, "Solver output file")->required();
    decode_cmd->add_flag("--hat", hat);
    decode_cmd->callback([&] {
        action = [&] {
            std::istringstream in(read_file(model_path));
            const ModelVerdict v = import_model(sN, parse_model(in), sm, sn, hat);
            Json j{{"good", v.good}, {"colors", v.coloring.render()}, {"report", v.report}};
            if (v.good) save(g, "witness.json", to_json(witness_file(v.coloring, sm, sn)));
            if (v.violation) save(g, "violation.json", to_json(copy_file(*v.violation, &v.coloring)));
            emit(g, j, v.report + "\n");
            return v.good ? kOk : kVerificationFailed;
        };
    });

    // blob
    std::string spec_path, word, preset = "random";
    std::vector<int> auto_params;
    auto* blob_cmd = app.add_subcommand("blob", "Blob embedding: a blue Q_n or a red Q_m");
    blob_cmd->add_option("--spec", spec_path, "JSON spec file");
    blob_cmd->add_option("--auto", auto_params, "N n m a b: consecutive blocks after [n]")->expected(5);
    blob_cmd->add_option("--colors", word, "Coloring word over R/B (or * at hat endpoints)");
    blob_cmd->add_option("--preset", preset, "parity | red | blue | random (uses --seed)");
    blob_cmd->callback([&] {
        action = [&] {
            BlobSpec spec;
            if (!spec_path.empty()) {
                spec = blob_spec_from_json(read_json(spec_path));
            } else if (auto_params.size() == 5) {
                const Coloring c = coloring_from_options(auto_params[0], word, preset, false, g.seed);
                const AutoSpec a =
                    auto_spec(auto_params[0], auto_params[1], auto_params[2], auto_params[3], auto_params[4], c);
                if (!a.spec) {
                    emit(g, {{"error", a.reason}}, a.reason + "\n");
                    return kVerificationFailed;
                }
                spec = *a.spec;
            } else {
                throw UsageError("blob needs --spec FILE or --auto N n m a b");
            }
            const Coloring c = coloring_from_options(spec.ground, word, preset, false, g.seed);
            if (!check_hypotheses(spec, c)) {
                emit(g, {{"error", "hypotheses fail"}}, "coloring does not satisfy the layer hypotheses\n");
                return kVerificationFailed;
            }
            const BlobOutcome out = blob_embed(spec, c);
            const CopyFile file = copy_file(out.cert, &c);
            Json j{{"tag", to_string(out.tag)}, {"certificate", to_json(file)}};
            std::string text = std::string(to_string(out.tag)) + "\n";
            for (const auto& [src, img] : out.cert.map()) text += "  " + render(src) + " -> " + render(img) + "\n";
            save(g, "blob-copy.json", to_json(file));
            emit(g, j, text);
            return kOk;
        };
    });

    // mc
    int mc_n = 0;
    std::optional<int> mc_ground;
    std::uint64_t trials = 0;
    std::string log_base;
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo frequency of a monochromatic Q_n");
    mc_cmd->add_option("n", mc_n)->required();
    mc_cmd->add_option("--ground", mc_ground, "N; otherwise ceil(3 n log n) in --log-base");
    mc_cmd->add_option("--trials", trials)->required();
    mc_cmd->add_option("--log-base", log_base, "2 or e")->check(CLI::IsMember({"2", "e"}));
    mc_cmd->callback([&] {
        action = [&] {
            int ground = 0;
            if (mc_ground) {
                ground = *mc_ground;
            } else if (!log_base.empty()) {
                ground = default_ground(mc_n, log_base == "2" ? LogBase::Two : LogBase::E);
            } else {
                throw UsageError("mc needs --ground or an explicit --log-base");
            }
            const McResult r = mc_mono_frequency(mc_n, ground, trials, g.seed);
            save(g, "mc.json", to_json(McFile{mc_n, ground, r.trials, g.seed, r.hits}));
            std::ostringstream text;
            text << "N=" << ground << " frequency=" << r.frequency << " +/- " << r.half_width << " [" << r.low
                 << ", " << r.high << "] (" << r.hits << "/" << r.trials << ")\n";
            emit(g,
                 {{"n", mc_n}, {"ground", ground}, {"trials", r.trials}, {"hits", r.hits}, {"frequency", r.frequency},
                  {"half_width", r.half_width}, {"low", r.low}, {"high", r.high}, {"seed", g.seed}},
                 text.str());
            return kOk;
        };
    });

    // dim2
    std::string poset_path;
    int chain = 0, antichain = 0, boolean = -1;
    auto* dim_cmd = app.add_subcommand("dim2", "Least n with the poset inside Q_n");
    dim_cmd->add_option("poset", poset_path, "Relation-matrix file");
    dim_cmd->add_option("--chain", chain);
    dim_cmd->add_option("--antichain", antichain);
    dim_cmd->add_option("--boolean", boolean);
    dim_cmd->callback([&] {
        action = [&] {
            std::optional<SmallPoset> p;
            if (!poset_path.empty()) {
                std::istringstream in(read_file(poset_path));
                p = parse_small_poset(in);
            } else if (chain > 0) {
                p = SmallPoset::chain(chain);
            } else if (antichain > 0) {
                p = SmallPoset::antichain(antichain);
            } else if (boolean >= 0) {
                p = SmallPoset::boolean_lattice(boolean);
            } else {
                throw UsageError("dim2 needs a poset file or --chain/--antichain/--boolean");
            }
            const int d = dim2(*p, g.cap());
            emit(g, {{"size", p->size()}, {"dim2", d}}, std::to_string(d) + "\n");
            return kOk;
        };
    });

    // balg
    std::string family_path;
    int balg_d = 0;
    auto* balg_cmd = app.add_subcommand("balg", "Boolean algebra B_d inside a set family");
    balg_cmd->add_option("family", family_path, "First line N, then one set per line, e.g. {1,3}")->required();
    balg_cmd->add_option("d", balg_d)->required();
    balg_cmd->callback([&] {
        action = [&] {
            std::istringstream in(read_file(family_path));
            int width = -1;
            if (!(in >> width)) throw ParseError("family file must start with the ground width");
            std::vector<ElementSet> family;
            for (std::string line; std::getline(in, line);) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                family.push_back(parse_set(line.substr(line.find_first_not_of(" \t")), width));
            }
            const auto found = contains_boolean_algebra(family, balg_d, g.cap());
            Json j{{"found", found.has_value()}};
            std::string text = found ? "found\n" : "none\n";
            if (found) {
                j["base"] = render(found->base);
                j["parts"] = Json::array();
                text += "  X_0 = " + render(found->base) + "\n";
                for (std::size_t i = 0; i < found->parts.size(); ++i) {
                    j["parts"].push_back(render(found->parts[i]));
                    text += "  X_" + std::to_string(i + 1) + " = " + render(found->parts[i]) + "\n";
                }
            }
            emit(g, j, text);
            return found ? kOk : kVerificationFailed;
        };
    });

    // verify-cert
    std::vector<std::string> cert_paths;
    auto* verify_cmd = app.add_subcommand("verify-cert", "Re-check stored certificates");
    verify_cmd->add_option("files", cert_paths)->required();
    verify_cmd->callback([&] {
        action = [&] {
            bool all = true;
            Json results = Json::array();
            std::string text;
            for (const auto& path : cert_paths) {
                const CertCheck c = verify_cert_file(path);
                all = all && c.ok;
                results.push_back({{"file", path}, {"ok", c.ok}, {"diagnostics", c.diagnostics}});
                text += path + ": " + (c.ok ? "ok" : "FAILED") + "\n" + c.diagnostics + "\n";
            }
            emit(g, results, text);
            return all ? kOk : kVerificationFailed;
        };
    });

    // reproduce
    std::vector<std::string> checks;
    bool all_checks = false, include_slow = false, parallel = false, list = false;
    auto* repro_cmd = app.add_subcommand("reproduce", "Run named checks and store their certificates");
    repro_cmd->add_option("checks", checks);
    repro_cmd->add_flag("--all", all_checks, "Every registered check (slow ones need --include-slow)");
    repro_cmd->add_flag("--include-slow", include_slow);
    repro_cmd->add_flag("--parallel", parallel, "Run checks concurrently, each in its own directory");
    repro_cmd->add_flag("--list", list);
    repro_cmd->callback([&] {
        action = [&] {
            if (list) {
                Json j = Json::array();
                std::string text;
                for (const auto& c : check_registry()) {
                    j.push_back({{"name", c.name}, {"summary", c.summary}, {"slow", c.slow}});
                    text += c.name + (c.slow ? " [slow]" : "") + "  " + c.summary + "\n";
                }
                emit(g, j, text);
                return kOk;
            }
            if (all_checks) {
                for (const auto& c : check_registry()) {
                    if (!c.slow || include_slow) checks.push_back(c.name);
                }
            }
            if (checks.empty()) throw UsageError("name at least one check, or pass --all");
            ReproduceOptions options;
            if (!g.out.empty()) options.out_dir = g.out;
            options.seed = g.seed;
            options.worker_count = g.threads;
            options.node_cap = g.node_cap;
            const auto reports = reproduce_many(checks, options, parallel);
            bool ok = true;
            Json j = Json::array();
            std::string text;
            for (const auto& r : reports) {
                ok = ok && r.passed;
                j.push_back(to_json(r));
                text += std::string(r.passed ? "PASS " : "FAIL ") + r.name + "  -> " +
                        (options.out_dir / r.name / "report.json").string() + "\n";
            }
            emit(g, j, text);
            return ok ? kOk : kVerificationFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ResourceError& e) {
        std::cerr << "cap hit: " << e.what() << '\n';
        return kCapHit;
    } catch (const ContractError& e) {
        std::cerr << "contract violated: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const DefectError& e) {
        std::cerr << "internal check failed: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const std::invalid_argument& e) {  // ArgumentError, UsageError
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
