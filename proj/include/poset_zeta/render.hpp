#pragma once

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "poset.hpp"
#include "prime_poset.hpp"
#include "root_dynamics.hpp"
#include "sd_combinatorics.hpp"
#include "zeta_series.hpp"

namespace poset_zeta {

/// A cell keeps its exact text; `integer` cells become JSON numbers when they
/// fit in 64 bits, everything else (rationals, floats, big integers) stays a
/// string so nothing is rounded on the way out.
struct Cell {
    enum class Kind { integer, text, boolean };
    std::string text;
    Kind kind = Kind::text;

    Cell(std::string s) : text(std::move(s)) {}  // NOLINT
    Cell(const char* s) : text(s) {}              // NOLINT
    Cell(std::int64_t v) : text(std::to_string(v)), kind(Kind::integer) {}  // NOLINT
    Cell(int v) : Cell(static_cast<std::int64_t>(v)) {}                     // NOLINT
    Cell(unsigned long v) : text(std::to_string(v)), kind(Kind::integer) {}  // NOLINT
    Cell(const Integer& v) : text(v.get_str()), kind(Kind::integer) {}      // NOLINT
    Cell(const Rational& v) : text(to_exact_string(v)) {}                   // NOLINT
    Cell(const Real& v) : text(v.to_string(20)) {}                          // NOLINT
    Cell(bool v) : text(v ? "true" : "false"), kind(Kind::boolean) {}       // NOLINT
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

enum class Format { csv, json };

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline nlohmann::ordered_json json_cell(const Cell& c) {
    if (c.kind == Cell::Kind::boolean) return c.text == "true";
    if (c.kind == Cell::Kind::integer) {
        std::int64_t v = 0;
        const auto* end = c.text.data() + c.text.size();
        const auto [ptr, ec] = std::from_chars(c.text.data(), end, v);
        if (ec == std::errc() && ptr == end) return v;
    }
    return c.text;
}

} // namespace detail

inline std::string to_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << detail::csv_field(t.columns[j]);
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << detail::csv_field(row[j].text);
        out << '\n';
    }
    return out.str();
}

inline nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = detail::json_cell(row[j]);
        rows.push_back(std::move(obj));
    }
    return rows;
}

inline std::string render(const Table& t, Format format) {
    if (format == Format::csv) return to_csv(t);
    return to_json(t).dump(2) + "\n";
}

enum class TableKind { f, F, H };

/// Rows (i, d, value) ordered by i then d.  The f grid is square (entries
/// with i > d are zero), F runs over 0 <= i <= d and H over 0 <= i <= d+1.
inline Table number_table(TableKind kind, long d_max) {
    Table t{{"i", "d", "value"}, {}};
    const long i_top = kind == TableKind::H ? d_max + 1 : d_max;
    for (long i = 0; i <= i_top; ++i)
        for (long d = 0; d <= d_max; ++d) {
            switch (kind) {
            case TableKind::f:
                t.add({i, d, f_number(i, d)});
                break;
            case TableKind::F:
                if (i <= d) t.add({i, d, big_F_number(i, d)});
                break;
            case TableKind::H:
                if (i <= d + 1) t.add({i, d, H_number(i, d)});
                break;
            }
        }
    return t;
}

inline std::string join_exact(const std::vector<Integer>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + "]";
}

inline std::string join_exact(const std::vector<Rational>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_exact_string(v[i]);
    return s + "]";
}

/// field,value summary of the zeta data of a poset.
inline Table zeta_table(const Poset& p, std::size_t series_terms) {
    const ChainVector v = strict_chain_vector(p);
    const RationalFunction z = zeta_rational(p);
    Table t{{"field", "value"}, {}};
    t.add({"elements", static_cast<std::int64_t>(p.size())});
    t.add({"dimension", v.dimension()});
    t.add({"strict_chains", join_exact(v.counts)});
    t.add({"chi", euler_characteristic(v)});
    t.add({"g", to_coefficient_string(g_polynomial(v))});
    t.add({"numerator", to_coefficient_string(z.numerator())});
    t.add({"denominator", to_coefficient_string(z.denominator())});
    t.add({"residue_at_infinity", residue_at_infinity(z)});
    t.add({"series", join_exact(series_expand(z, series_terms))});
    return t;
}

inline void add_root_rows(Table& t, std::optional<unsigned long> k, const RootSet& rs) {
    for (std::size_t j = 0; j < rs.roots.size(); ++j) {
        std::vector<Cell> row;
        if (k) row.emplace_back(*k);
        row.emplace_back(static_cast<std::int64_t>(j));
        row.emplace_back(rs.roots[j].re);
        row.emplace_back(rs.roots[j].im);
        row.emplace_back(abs(rs.roots[j]));
        row.emplace_back(rs.residuals[j].to_string(6));
        row.emplace_back(rs.precision_bits);
        t.add(std::move(row));
    }
}

inline Table roots_table(const RootSet& rs) {
    Table t{{"index", "re", "im", "abs", "residual", "precision_bits"}, {}};
    add_root_rows(t, std::nullopt, rs);
    return t;
}

inline Table root_trajectory_table(const std::vector<std::pair<unsigned long, RootSet>>& sets) {
    Table t{{"k", "index", "re", "im", "abs", "residual", "precision_bits"}, {}};
    for (const auto& [k, rs] : sets) add_root_rows(t, k, rs);
    return t;
}

inline Table trajectory_table(const TrajectoryReport& r) {
    Table t{{"k", "re_beta1", "im_beta1", "abs_beta1", "es_ratio", "product_re", "product_im", "max_match_distance",
             "precision_bits"},
            {}};
    for (const auto& rec : r.records) {
        std::ostringstream md;
        md.precision(6);
        md << std::scientific << rec.max_match_distance;
        t.add({rec.k, rec.beta1.re, rec.beta1.im, rec.abs_beta1, rec.es_ratio, rec.product_of_others.re,
               rec.product_of_others.im, md.str(), r.precision_bits});
    }
    return t;
}

inline Table chi_table(const SquarefreeTable& table, std::int64_t lo, std::int64_t hi, ChiMethod method) {
    Table t{{"n", "chi", "mertens"}, {}};
    if (hi < lo) return t;
    if (lo < 2) fail(ErrorCode::InvalidConfig, "P_n needs n >= 2");
    if (hi > table.n()) fail(ErrorCode::InvalidConfig, "sieve table too small for n");
    // Running sums keep a long sweep linear in hi.
    std::int64_t chi = 0, m = 1;
    for (std::int64_t n = 2; n <= hi; ++n) {
        m += table.mobius(n);
        if (table.is_squarefree(n)) chi += table.weight(n) % 2 == 1 ? 1 : -1;
        if (n < lo) continue;
        t.add({n, method == ChiMethod::poset ? chi_Pn(table, n, method) : chi, m});
    }
    return t;
}

inline Table alpha_table(const std::vector<AlphaRecord>& records) {
    Table t{{"n", "chi", "mertens", "dim", "top_chains", "H1", "alpha"}, {}};
    for (const auto& r : records)
        t.add({r.n, r.chi, r.mertens, r.d, r.top_chains, r.H1, r.alpha ? Cell(*r.alpha) : Cell("NA")});
    return t;
}

inline Table dimension_table(const std::vector<DimensionRow>& rows) {
    Table t{{"n", "dim", "log_ratio", "ratio", "in_band"}, {}};
    for (const auto& r : rows) {
        std::ostringstream a, b;
        a.precision(17);
        b.precision(17);
        a << r.log_ratio;
        b << r.ratio;
        t.add({r.n, r.d, a.str(), b.str(), r.in_band});
    }
    return t;
}

} // namespace poset_zeta
