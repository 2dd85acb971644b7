#include "qramsey/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "qramsey/detail/copy_engine.hpp"
#include "qramsey/errors.hpp"
#include "qramsey/version.hpp"

namespace qramsey {

std::string_view to_string(SearchTag tag) noexcept {
    switch (tag) {
        case SearchTag::Witness: return "Witness";
        case SearchTag::Exhausted: return "Exhausted";
        default: return "CapHit";
    }
}

void SearchProblem::validate() const {
    if (red_m < 1 || blue_n < 1) throw ArgumentError("search needs m, n >= 1");
    if (ground < 0 || ground > kMaxSearchWidth) {
        throw ArgumentError("native search supports 0 <= N <= " + std::to_string(kMaxSearchWidth) +
                            "; use the CNF export beyond that");
    }
    if (hat && ground < 1) throw ArgumentError("hat mode needs N >= 1");
    if (symmetry.use_color_swap && red_m != blue_n) {
        throw ArgumentError("color-swap symmetry is only valid when m == n");
    }
    if (node_cap && *node_cap == 0) throw ArgumentError("node cap must be positive");
    if (worker_count < 1) throw ArgumentError("worker count must be >= 1");
}

namespace {

constexpr std::uint8_t kRed = 0;
constexpr std::uint8_t kBlue = 1;
constexpr std::uint8_t kBoth = 2;
constexpr std::uint8_t kOpen = 3;

std::vector<std::vector<std::uint16_t>> permutation_tables(int n, bool full_group) {
    std::vector<std::vector<int>> perms;
    if (full_group) {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
    } else {
        for (int i = 0; i + 1 < n; ++i) {
            std::vector<int> p(static_cast<std::size_t>(n));
            std::iota(p.begin(), p.end(), 0);
            std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i) + 1]);
            perms.push_back(p);
        }
    }
    std::vector<std::vector<std::uint16_t>> tables;
    const std::uint32_t size = std::uint32_t{1} << n;
    for (const auto& p : perms) {
        std::vector<std::uint16_t> t(size);
        for (std::uint32_t x = 0; x < size; ++x) {
            std::uint32_t y = 0;
            for (int b = 0; b < n; ++b) {
                if ((x >> b) & 1U) y |= std::uint32_t{1} << p[static_cast<std::size_t>(b)];
            }
            t[x] = static_cast<std::uint16_t>(y);
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

struct Shared {
    std::atomic<bool> stop{false};
    std::atomic<bool> cap_hit{false};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> copy_prunes{0};
    std::atomic<std::uint64_t> symmetry_prunes{0};
    std::uint64_t cap = ~std::uint64_t{0};
    std::uint64_t batch = 1024;
    std::mutex mu;
    std::optional<std::vector<std::uint8_t>> witness;
};

enum class Step { Continue, Stop };

template <std::size_t W>
class Worker {
public:
    using M = detail::Mask<W>;

    Worker(const SearchProblem& p, const std::vector<std::uint32_t>& positions,
           const std::vector<std::vector<std::uint16_t>>& perms, Shared& shared)
        : p_(p), positions_(positions), perms_(perms), shared_(shared),
          lat_(detail::lattice_for<W>(p.ground)),
          word_(std::size_t{1} << p.ground, kOpen) {
        for (int level = 0; level <= p.red_m; ++level) red_finders_.emplace_back(lat_, p.red_m, level);
        for (int level = 0; level <= p.blue_n; ++level) blue_finders_.emplace_back(lat_, p.blue_n, level);
        if (p.hat) {
            for (std::size_t e : {std::size_t{0}, lat_.size() - 1}) {
                red_.set(e);
                blue_.set(e);
                word_[e] = kBoth;
            }
        }
        force_red_first_ = p.symmetry.use_color_swap;
        use_perms_ = p.symmetry.use_coordinate_permutations && !perms_.empty();
    }

    ~Worker() { flush(); }

    /// True when the pre-colored endpoints alone already hold a forbidden copy.
    bool initially_blocked() {
        std::uint64_t nodes = 0;
        detail::MaskCopyFinder<W> red(lat_, p_.red_m);
        detail::MaskCopyFinder<W> blue(lat_, p_.blue_n);
        return red.find(red_, nodes, ~std::uint64_t{0}) || blue.find(blue_, nodes, ~std::uint64_t{0});
    }

    void replay(const std::vector<std::uint8_t>& prefix) {
        for (std::size_t d = 0; d < prefix.size(); ++d) assign(positions_[d], prefix[d]);
    }

    Step dfs(std::size_t depth, std::size_t limit, const std::function<Step(Worker&)>& leaf) {
        if (depth == limit) return leaf(*this);
        const std::uint32_t e = positions_[depth];
        const int colors = (depth == 0 && force_red_first_) ? 1 : 2;
        for (int ci = 0; ci < colors; ++ci) {
            const std::uint8_t col = ci == 0 ? kRed : kBlue;
            if (count_node()) return Step::Stop;
            assign(e, col);
            if (use_perms_ && !lex_leader_ok(e)) {
                ++symmetry_prunes_;
                unassign(e);
                continue;
            }
            if (forbidden_copy_through(e, col)) {
                ++copy_prunes_;
                unassign(e);
                continue;
            }
            const Step s = dfs(depth + 1, limit, leaf);
            unassign(e);
            if (s == Step::Stop) return Step::Stop;
        }
        return Step::Continue;
    }

    std::vector<std::uint8_t> prefix(std::size_t depth) const {
        std::vector<std::uint8_t> out;
        for (std::size_t d = 0; d < depth; ++d) out.push_back(word_[positions_[d]]);
        return out;
    }

    const std::vector<std::uint8_t>& word() const noexcept { return word_; }

    void flush() {
        shared_.nodes += nodes_;
        shared_.copy_prunes += copy_prunes_;
        shared_.symmetry_prunes += symmetry_prunes_;
        nodes_ = copy_prunes_ = symmetry_prunes_ = 0;
    }

private:
    bool count_node() {
        ++nodes_;
        if (++since_flush_ >= shared_.batch) {
            since_flush_ = 0;
            const std::uint64_t total = shared_.nodes.fetch_add(nodes_) + nodes_;
            nodes_ = 0;
            if (total > shared_.cap) {
                shared_.cap_hit = true;
                shared_.stop = true;
            }
        }
        return shared_.stop.load(std::memory_order_relaxed);
    }

    void assign(std::uint32_t e, std::uint8_t col) {
        word_[e] = col;
        (col == kRed ? red_ : blue_).set(e);
    }

    void unassign(std::uint32_t e) {
        (word_[e] == kRed ? red_ : blue_).reset(e);
        word_[e] = kOpen;
    }

    // Keep iff word <= word∘g for every generator g, as far as the assigned
    // prefix 0..e decides it.
    bool lex_leader_ok(std::uint32_t e) const {
        for (const auto& g : perms_) {
            for (std::uint32_t x = 0; x <= e; ++x) {
                const std::uint32_t y = g[x];
                if (y == x) continue;
                if (y > e) break;
                const std::uint8_t a = word_[x];
                const std::uint8_t b = word_[y];
                if (a < b) break;
                if (a > b) return false;
            }
        }
        return true;
    }

    bool forbidden_copy_through(std::uint32_t e, std::uint8_t col) {
        std::uint64_t nodes = 0;
        auto& finders = col == kRed ? red_finders_ : blue_finders_;
        const M& adm = col == kRed ? red_ : blue_;
        for (auto& f : finders) {
            if (f.find(adm, nodes, ~std::uint64_t{0}, e)) return true;
        }
        return false;
    }

    const SearchProblem& p_;
    const std::vector<std::uint32_t>& positions_;
    const std::vector<std::vector<std::uint16_t>>& perms_;
    Shared& shared_;
    const detail::MaskLattice<W>& lat_;
    std::vector<detail::MaskCopyFinder<W>> red_finders_;
    std::vector<detail::MaskCopyFinder<W>> blue_finders_;
    M red_{};
    M blue_{};
    std::vector<std::uint8_t> word_;
    bool force_red_first_ = false;
    bool use_perms_ = false;
    std::uint64_t nodes_ = 0;
    std::uint64_t since_flush_ = 0;
    std::uint64_t copy_prunes_ = 0;
    std::uint64_t symmetry_prunes_ = 0;
};

Coloring word_to_coloring(int n, bool hat, const std::vector<std::uint8_t>& word) {
    Coloring c = Coloring::filled(n, Color::Blue, hat);
    for (std::size_t s = 0; s < word.size(); ++s) {
        if (word[s] == kRed) c.set(s, Color::Red);
    }
    return c;
}

template <std::size_t W>
SearchOutcome run_search(const SearchProblem& p) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint32_t size = std::uint32_t{1} << p.ground;
    std::vector<std::uint32_t> positions;
    for (std::uint32_t s = 0; s < size; ++s) {
        if (p.hat && (s == 0 || s == size - 1)) continue;
        positions.push_back(s);
    }
    const auto perms = p.symmetry.use_coordinate_permutations
                           ? permutation_tables(p.ground, p.symmetry.full_group)
                           : std::vector<std::vector<std::uint16_t>>{};

    Shared shared;
    if (p.node_cap) {
        shared.cap = *p.node_cap;
        shared.batch = std::clamp<std::uint64_t>(*p.node_cap / 64, 1, 1024);
    }

    auto finish = [&](SearchTag tag, std::optional<Coloring> witness) {
        SearchOutcome out;
        out.tag = tag;
        out.witness = std::move(witness);
        out.stats.nodes = shared.nodes;
        out.stats.copy_prunes = shared.copy_prunes;
        out.stats.symmetry_prunes = shared.symmetry_prunes;
        out.stats.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    // Fan out the top two assignment levels into independent subtree tasks.
    const std::size_t split = std::min<std::size_t>(2, positions.size());
    std::vector<std::vector<std::uint8_t>> tasks;
    {
        Worker<W> root(p, positions, perms, shared);
        if (root.initially_blocked()) {
            root.flush();
            return finish(SearchTag::Exhausted, std::nullopt);
        }
        root.dfs(0, split, [&](Worker<W>& w) {
            tasks.push_back(w.prefix(split));
            return Step::Continue;
        });
    }

    auto run_task = [&](Worker<W>& w, const std::vector<std::uint8_t>& prefix) {
        w.replay(prefix);
        w.dfs(split, positions.size(), [&](Worker<W>& leaf) {
            std::lock_guard lock(shared.mu);
            if (!shared.witness) shared.witness = leaf.word();
            shared.stop = true;
            return Step::Stop;
        });
    };

    const int workers = std::min<int>(p.worker_count, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    if (workers <= 1) {
        for (const auto& t : tasks) {
            if (shared.stop) break;
            Worker<W> w(p, positions, perms, shared);
            run_task(w, t);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < tasks.size() && !shared.stop; t = next++) {
                    Worker<W> w(p, positions, perms, shared);
                    run_task(w, tasks[t]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    if (shared.witness) {
        return finish(SearchTag::Witness, word_to_coloring(p.ground, p.hat, *shared.witness));
    }
    if (shared.cap_hit) return finish(SearchTag::CapHit, std::nullopt);
    return finish(SearchTag::Exhausted, std::nullopt);
}

}  // namespace

SearchOutcome search_good_coloring(const SearchProblem& problem) {
    problem.validate();
    SearchOutcome out = problem.ground <= 6 ? run_search<1>(problem) : run_search<4>(problem);
    if (out.witness && !verify_witness(*out.witness, problem.red_m, problem.blue_n)) {
        throw DefectError("search produced a coloring that fails verification");
    }
    return out;
}

bool verify_witness(const Coloring& c, int m, int n) {
    return !find_mono_copy(c, m, Color::Red) && !find_mono_copy(c, n, Color::Blue);
}

bool good_coloring_exists_brute_force(int n_ground, int m, int n, bool hat) {
    if (n_ground < 0 || n_ground > 4) throw ResourceError("raw enumeration supports N <= 4");
    if (hat && n_ground == 0) throw ArgumentError("hat mode needs N >= 1");
    const std::uint64_t size = std::uint64_t{1} << n_ground;
    const std::uint64_t words = std::uint64_t{1} << size;
    for (std::uint64_t w = 0; w < words; ++w) {
        Coloring c = Coloring::filled(n_ground, Color::Blue, hat);
        bool skip = false;
        for (std::uint64_t s = 0; s < size; ++s) {
            const bool red = (w >> s) & 1U;
            if (hat && (s == 0 || s == size - 1)) {
                // One representative per interior word.
                if (red) skip = true;
                continue;
            }
            if (red) c.set(s, Color::Red);
        }
        if (skip) continue;
        if (verify_witness(c, m, n)) return true;
    }
    return false;
}

Cnf build_cnf(int n_ground, int m, int n, bool hat) {
    if (hat && n_ground < 1) throw ArgumentError("hat mode needs N >= 1");
    if (m < 1 || n < 1) throw ArgumentError("cnf needs m, n >= 1");
    const std::uint64_t top = full_mask(n_ground);
    std::set<std::vector<int>> clauses;
    auto add = [&](int m_or_n, bool positive) {
        for (const auto& fam : enumerate_copy_images(n_ground, m_or_n)) {
            std::vector<int> clause;
            for (const auto& s : fam) {
                if (hat && (s.bits() == 0 || s.bits() == top)) continue;
                const int v = static_cast<int>(s.bits()) + 1;
                clause.push_back(positive ? v : -v);
            }
            std::sort(clause.begin(), clause.end(),
                      [](int a, int b) { return std::abs(a) < std::abs(b); });
            clauses.insert(std::move(clause));
        }
    };
    add(m, false);
    add(n, true);
    Cnf out;
    out.variables = static_cast<int>(std::uint64_t{1} << n_ground);
    out.clauses.assign(clauses.begin(), clauses.end());
    return out;
}

CnfCounts export_cnf(int n_ground, int m, int n, bool hat, std::ostream& sink) {
    const Cnf cnf = build_cnf(n_ground, m, n, hat);
    sink << "c qramsey " << kVersion << "\n";
    sink << "c N=" << n_ground << " m=" << m << " n=" << n << " hat=" << (hat ? 1 : 0) << "\n";
    sink << "c variable int(S)+1 is true iff S is red; SAT iff a good coloring exists\n";
    sink << "p cnf " << cnf.variables << " " << cnf.clauses.size() << "\n";
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) sink << lit << ' ';
        sink << "0\n";
    }
    return {cnf.variables, cnf.clauses.size()};
}

Cnf parse_dimacs(std::istream& in) {
    Cnf cnf;
    bool header = false;
    std::size_t expected = 0;
    std::string line;
    std::vector<int> current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first == "p") {
            std::string fmt;
            long long vars = -1, count = -1;
            if (header || !(ls >> fmt >> vars >> count) || fmt != "cnf" || vars < 0 || count < 0) {
                throw ParseError("bad DIMACS header: " + line);
            }
            header = true;
            cnf.variables = static_cast<int>(vars);
            expected = static_cast<std::size_t>(count);
            continue;
        }
        if (!header) throw ParseError("clause before DIMACS header");
        std::istringstream all(line);
        long long lit = 0;
        while (all >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                if (std::llabs(lit) > cnf.variables) throw ParseError("literal out of range: " + std::to_string(lit));
                current.push_back(static_cast<int>(lit));
            }
        }
        if (!all.eof()) throw ParseError("bad token in clause line: " + line);
    }
    if (!header) throw ParseError("missing DIMACS header");
    if (!current.empty()) throw ParseError("last clause not terminated by 0");
    if (cnf.clauses.size() != expected) {
        throw ParseError("header announces " + std::to_string(expected) + " clauses, found " +
                         std::to_string(cnf.clauses.size()));
    }
    return cnf;
}

std::optional<std::vector<bool>> solve_cnf_exhaustive(const Cnf& cnf) {
    if (cnf.variables > 24) throw ResourceError("exhaustive CNF check supports at most 24 variables");
    struct Packed {
        std::uint32_t pos = 0;
        std::uint32_t neg = 0;
    };
    std::vector<Packed> packed;
    for (const auto& clause : cnf.clauses) {
        Packed c;
        for (int lit : clause) {
            const auto bit = std::uint32_t{1} << (std::abs(lit) - 1);
            (lit > 0 ? c.pos : c.neg) |= bit;
        }
        packed.push_back(c);
    }
    const std::uint64_t count = std::uint64_t{1} << cnf.variables;
    for (std::uint64_t a = 0; a < count; ++a) {
        const auto assign = static_cast<std::uint32_t>(a);
        bool ok = true;
        for (const auto& c : packed) {
            if (((assign & c.pos) | (~assign & c.neg)) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<bool> model(static_cast<std::size_t>(cnf.variables));
            for (int v = 0; v < cnf.variables; ++v) model[static_cast<std::size_t>(v)] = (assign >> v) & 1U;
            return model;
        }
    }
    return std::nullopt;
}

std::vector<int> parse_model(std::istream& in) {
    std::vector<int> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "s") {
            std::string status;
            ls >> status;
            if (status != "SATISFIABLE") throw ParseError("solver reported " + status + ", no model");
            continue;
        }
        if (tok != "v") {
            ls.clear();
            ls.str(line);
        }
        long long lit = 0;
        while (ls >> lit) {
            if (lit != 0) out.push_back(static_cast<int>(lit));
        }
        if (!ls.eof()) throw ParseError("bad token in model: " + line);
    }
    return out;
}

ModelVerdict import_model(int n_ground, const std::vector<int>& model, int m, int n, bool hat) {
    if (n_ground < 0 || n_ground > kMaxColoringWidth) throw ArgumentError("ground width out of range");
    const std::uint64_t size = std::uint64_t{1} << n_ground;
    std::vector<std::int8_t> value(size, -1);
    for (int lit : model) {
        const auto v = static_cast<std::uint64_t>(std::abs(lit));
        if (lit == 0 || v > size) throw ParseError("model literal out of range: " + std::to_string(lit));
        const std::int8_t val = lit > 0 ? 1 : 0;
        auto& slot = value[v - 1];
        if (slot != -1 && slot != val) throw ParseError("variable " + std::to_string(v) + " has both signs");
        slot = val;
    }
    Coloring c = Coloring::filled(n_ground, Color::Blue, hat);
    for (std::uint64_t s = 0; s < size; ++s) {
        const bool endpoint = hat && (s == 0 || s == size - 1);
        if (value[s] == -1 && !endpoint) {
            throw ParseError("model leaves variable " + std::to_string(s + 1) + " unassigned");
        }
        if (!endpoint && value[s] == 1) c.set(s, Color::Red);
    }
    ModelVerdict out;
    out.coloring = c;
    if (auto red = find_mono_copy(c, m, Color::Red)) {
        out.violation = std::move(red);
    } else if (auto blue = find_mono_copy(c, n, Color::Blue)) {
        out.violation = std::move(blue);
    }
    out.good = !out.violation;
    if (out.good) {
        out.report = "model decodes to a good coloring: no red Q_" + std::to_string(m) + ", no blue Q_" +
                     std::to_string(n);
    } else {
        std::ostringstream os;
        os << "model violates: " << to_string(*out.violation->color_claim) << " Q_" << out.violation->dim
           << " with image";
        for (const auto& s : out.violation->image_family()) os << ' ' << render(s);
        out.report = os.str();
    }
    return out;
}

}  // namespace qramsey
