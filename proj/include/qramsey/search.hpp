#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qramsey/coloring.hpp"
#include "qramsey/copies.hpp"

namespace qramsey {

inline constexpr int kMaxSearchWidth = 8;

/// Symmetry reduction for the exhaustive search.
///
/// Coordinate permutations are used through lex-leader pruning on the color
/// word (red < blue, sets in integer order): a partial coloring is cut when
/// some generator g already makes word∘g lexicographically smaller. The
/// default generator set is the adjacent transpositions (i i+1) of ground
/// elements; `full_group` checks all N! permutations instead.
struct SymmetryOptions {
    bool use_coordinate_permutations = true;
    bool use_color_swap = false;  // only legal when m == n
    bool full_group = false;
};

struct SearchProblem {
    int ground = 0;  // N
    int red_m = 1;
    int blue_n = 1;
    bool hat = false;
    SymmetryOptions symmetry{};
    std::optional<std::uint64_t> node_cap;
    int worker_count = 1;

    /// Throws ArgumentError when the problem is outside the supported range.
    void validate() const;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t copy_prunes = 0;
    std::uint64_t symmetry_prunes = 0;
    double wall_seconds = 0.0;
};

enum class SearchTag { Witness, Exhausted, CapHit };
std::string_view to_string(SearchTag tag) noexcept;

struct SearchOutcome {
    SearchTag tag = SearchTag::CapHit;
    std::optional<Coloring> witness;
    SearchStats stats;
};

/// Depth-first search over colorings of Q_N (interior sets only in hat
/// mode) assigned in increasing integer order, red tried before blue.
/// Returns the first good coloring, or Exhausted once every branch is cut.
SearchOutcome search_good_coloring(const SearchProblem& problem);

/// True iff c has no red Q_m and no blue Q_n.
bool verify_witness(const Coloring& c, int m, int n);

/// Raw enumeration of all 2^(2^N) colorings (N <= 4); independent of the
/// search tree. Returns whether a good coloring exists.
bool good_coloring_exists_brute_force(int n_ground, int m, int n, bool hat);

/// Propositional encoding: variable int(S)+1 is true iff S is red.
struct Cnf {
    int variables = 0;
    std::vector<std::vector<int>> clauses;  // literals sorted by variable, clauses sorted
};

struct CnfCounts {
    int variables = 0;
    std::size_t clauses = 0;
};

/// One all-negative clause per Q_m image family, one all-positive clause per
/// Q_n family. In hat mode the endpoint variables are left out of clauses.
Cnf build_cnf(int n_ground, int m, int n, bool hat);

/// Writes DIMACS with provenance comments.
CnfCounts export_cnf(int n_ground, int m, int n, bool hat, std::ostream& sink);

/// Reads DIMACS ("c" comments, one "p cnf" header). Throws ParseError.
Cnf parse_dimacs(std::istream& in);

/// Exhaustive satisfiability check for at most 24 variables. Returns a model
/// (index v-1 true iff variable v true) or nothing when unsatisfiable.
std::optional<std::vector<bool>> solve_cnf_exhaustive(const Cnf& cnf);

/// Reads a solver model: signed integers, optionally on "v" lines; "c" lines
/// ignored; an "s UNSATISFIABLE" line is reported as ParseError.
std::vector<int> parse_model(std::istream& in);

struct ModelVerdict {
    Coloring coloring;
    bool good = false;
    std::optional<CopyCert> violation;  // a red Q_m or blue Q_n when !good
    std::string report;
};

/// Decodes a model into a coloring and checks it. Throws ParseError when a
/// variable is missing, repeated with both signs, or out of range.
ModelVerdict import_model(int n_ground, const std::vector<int>& model, int m, int n, bool hat = false);

}  // namespace qramsey
