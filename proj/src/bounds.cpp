#include "qramsey/bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qramsey/errors.hpp"

namespace qramsey {

std::int64_t floor_of(const Rational& r) {
    const std::int64_t num = r.numerator();
    const std::int64_t den = r.denominator();  // always positive
    std::int64_t q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

namespace {

Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

bool diagonal(int m, int n) { return m == n; }

}  // namespace

const std::vector<BoundEntry>& bound_entries() {
    static const std::vector<BoundEntry> entries = {
        {"exact: Theorem 1(ii)", Direction::Lower, "R(Q_1,Q_n) = n+1",
         [](int m, int) { return m == 1; }, [](int, int n) { return rat(n + 1); }},
        {"exact: Theorem 1(ii)", Direction::Upper, "R(Q_1,Q_n) = n+1",
         [](int m, int) { return m == 1; }, [](int, int n) { return rat(n + 1); }},
        {"exact: Theorem 1(v)", Direction::Lower, "R(Q_2,Q_2) = 4",
         [](int m, int n) { return m == 2 && n == 2; }, [](int, int) { return rat(4); }},
        {"exact: Theorem 1(v)", Direction::Upper, "R(Q_2,Q_2) = 4",
         [](int m, int n) { return m == 2 && n == 2; }, [](int, int) { return rat(4); }},
        {"exact: Theorem 8", Direction::Lower, "R(Q_2,Q_3) = 5",
         [](int m, int n) { return m == 2 && n == 3; }, [](int, int) { return rat(5); }},
        {"exact: Theorem 8", Direction::Upper, "R(Q_2,Q_3) = 5",
         [](int m, int n) { return m == 2 && n == 3; }, [](int, int) { return rat(5); }},
        {"known: Theorem 1(v)", Direction::Lower, "R(Q_3,Q_3) in {7,8}",
         [](int m, int n) { return m == 3 && n == 3; }, [](int, int) { return rat(7); }},
        {"known: Theorem 1(v)", Direction::Upper, "R(Q_3,Q_3) in {7,8}",
         [](int m, int n) { return m == 3 && n == 3; }, [](int, int) { return rat(8); }},
        {"Theorem 1(i): 2n", Direction::Lower, "", diagonal, [](int, int n) { return rat(2 * n); }},
        {"Theorem 1(i): n^2+2n", Direction::Upper, "", diagonal,
         [](int, int n) { return rat(std::int64_t{n} * n + 2 * n); }},
        {"Theorem 1(iii): 2n+2", Direction::Upper, "", [](int m, int) { return m == 2; },
         [](int, int n) { return rat(2 * n + 2); }},
        {"Theorem 1(iv): n+m", Direction::Lower, "", [](int, int) { return true; },
         [](int m, int n) { return rat(n + m); }},
        {"Theorem 1(iv): mn+n+m", Direction::Upper, "", [](int, int) { return true; },
         [](int m, int n) { return rat(std::int64_t{m} * n + n + m); }},
        {"Theorem 2: n^2+1", Direction::Upper, "", diagonal,
         [](int, int n) { return rat(std::int64_t{n} * n + 1); }},
        {"Theorem 4: 5n/3+2", Direction::Upper, "", [](int m, int) { return m == 2; },
         [](int, int n) { return rat(5 * n, 3) + 2; }},
        {"Theorem 5: n^2-n+2", Direction::Upper, "", diagonal,
         [](int, int n) { return rat(std::int64_t{n} * n - n + 2); }},
        {"Theorem 6: 37n/16+39/16", Direction::Upper, "stated for all n; the supporting argument assumes n >= 4",
         [](int m, int) { return m == 3; }, [](int, int n) { return rat(37 * n, 16) + rat(39, 16); }},
        {"Theorem 7: (m-2+(9m-9)/((2m-3)(m+1)))n+m+3", Direction::Upper, "",
         [](int m, int n) { return n >= m && m >= 4; },
         [](int m, int n) {
             const Rational coeff = rat(m - 2) + rat(9 * m - 9, std::int64_t{2 * m - 3} * (m + 1));
             return coeff * n + (m + 3);
         }},
    };
    return entries;
}

const std::vector<BoundEntry>& hat_bound_entries() {
    static const std::vector<BoundEntry> entries = {
        {"Claim c: n^2-n", Direction::Upper, "", [](int m, int n) { return m == n && n >= 3; },
         [](int, int n) { return rat(std::int64_t{n} * n - n); }},
        {"Claim d: 7n/4+9/4", Direction::Upper, "", [](int m, int) { return m == 3; },
         [](int, int n) { return rat(7 * n, 4) + rat(9, 4); }},
        {"Claim f: (m-2+3/(2m-3))n+m", Direction::Upper, "",
         [](int m, int n) { return n >= m && m >= 4; },
         [](int m, int n) { return (rat(m - 2) + rat(3, 2 * m - 3)) * n + m; }},
    };
    return entries;
}

Bounds bounds(int m, int n) {
    if (m < 1 || n < 1) throw ArgumentError("bounds need m, n >= 1");
    if (m > n) std::swap(m, n);
    struct Hit {
        std::int64_t value;
        const BoundEntry* entry;
    };
    std::vector<Hit> lows, ups;
    for (const auto& e : bound_entries()) {
        if (!e.applies(m, n)) continue;
        const std::int64_t v = floor_of(e.value(m, n));
        (e.direction == Direction::Lower ? lows : ups).push_back({v, &e});
    }
    auto exact = std::find_if(lows.begin(), lows.end(),
                              [](const Hit& h) { return h.entry->name.rfind("exact:", 0) == 0; });
    Bounds out;
    if (exact != lows.end()) {
        out.lower = out.upper = exact->value;
        out.provenance.push_back(exact->entry->name);
        return out;
    }
    out.lower = std::max_element(lows.begin(), lows.end(), [](auto& x, auto& y) { return x.value < y.value; })->value;
    out.upper = std::min_element(ups.begin(), ups.end(), [](auto& x, auto& y) { return x.value < y.value; })->value;
    for (const auto& h : lows) {
        if (h.value == out.lower) out.provenance.push_back("lower: " + h.entry->name);
    }
    for (const auto& h : ups) {
        if (h.value == out.upper) out.provenance.push_back("upper: " + h.entry->name);
    }
    return out;
}

HatBounds hat_bounds(int m, int n) {
    if (m < 1 || n < 1) throw ArgumentError("hat bounds need m, n >= 1");
    if (m > n) std::swap(m, n);
    HatBounds out;
    std::vector<std::pair<std::int64_t, const BoundEntry*>> hits;
    for (const auto& e : hat_bound_entries()) {
        if (e.applies(m, n)) hits.emplace_back(floor_of(e.value(m, n)), &e);
    }
    if (hits.empty()) return out;
    out.upper = std::min_element(hits.begin(), hits.end())->first;
    for (const auto& [v, e] : hits) {
        if (v == *out.upper) out.provenance.push_back(e->name);
    }
    return out;
}

std::vector<BoundsRow> bounds_table(int max_n, std::ostream& sink, TableFormat format) {
    if (max_n < 1 || max_n > 100) throw ArgumentError("table size must be in [1,100]");
    std::vector<BoundsRow> rows;
    for (int n = 1; n <= max_n; ++n) {
        for (int m = 1; m <= n; ++m) rows.push_back({m, n, bounds(m, n)});
    }
    std::sort(rows.begin(), rows.end(), [](const BoundsRow& x, const BoundsRow& y) {
        return std::tie(x.m, x.n) < std::tie(y.m, y.n);
    });
    if (format == TableFormat::JsonLines) {
        for (const auto& r : rows) {
            nlohmann::json j = {{"m", r.m}, {"n", r.n}, {"lower", r.value.lower},
                                {"upper", r.value.upper}, {"provenance", r.value.provenance}};
            sink << j.dump() << '\n';
        }
        return rows;
    }
    sink << std::setw(4) << "m" << std::setw(5) << "n" << std::setw(7) << "lower" << std::setw(7) << "upper"
         << "  provenance\n";
    for (const auto& r : rows) {
        std::string prov;
        for (const auto& p : r.value.provenance) prov += (prov.empty() ? "" : "; ") + p;
        sink << std::setw(4) << r.m << std::setw(5) << r.n << std::setw(7) << r.value.lower << std::setw(7)
             << r.value.upper << "  " << prov << '\n';
    }
    return rows;
}

}  // namespace qramsey
