#pragma once

// Known lower/upper bounds on R(Q_m, Q_n) and on the hat variant, evaluated
// in exact rational arithmetic. Entries are stated for m <= n; callers may
// pass either order.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace qramsey {

using Rational = boost::rational<std::int64_t>;

/// Floor of a rational, integer arithmetic only.
std::int64_t floor_of(const Rational& r);

enum class Direction { Lower, Upper };

struct BoundEntry {
    std::string name;  // also the provenance label
    Direction direction;
    std::string note;  // caveat shown with the entry, may be empty
    std::function<bool(int m, int n)> applies;
    std::function<Rational(int m, int n)> value;
};

/// All R(Q_m,Q_n) entries, including exact values and dominated bounds.
const std::vector<BoundEntry>& bound_entries();
/// Upper bounds on the hat number.
const std::vector<BoundEntry>& hat_bound_entries();

struct Bounds {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::vector<std::string> provenance;  // binding entries, lower side first
};

/// Best known bounds; exact values override both sides.
Bounds bounds(int m, int n);

struct HatBounds {
    std::optional<std::int64_t> upper;
    std::vector<std::string> provenance;
};

HatBounds hat_bounds(int m, int n);

struct BoundsRow {
    int m = 0;
    int n = 0;
    Bounds value;
};

enum class TableFormat { Text, JsonLines };

/// Rows for 1 <= m <= n <= max_n (max_n <= 100), written to `sink`.
std::vector<BoundsRow> bounds_table(int max_n, std::ostream& sink, TableFormat format = TableFormat::Text);

}  // namespace qramsey
