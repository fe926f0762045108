#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "poset_zeta/poset_json.hpp"
#include "poset_zeta/render.hpp"

namespace fs = std::filesystem;
using namespace poset_zeta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitComputation = 3;
constexpr int kExitResourceCap = 4;

const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  2  configuration or input error (bad flags, unreadable file, malformed poset)\n"
    "  3  computation error (no convergence, degenerate input for the requested quantity)\n"
    "  4  resource cap exceeded (subdivision size, brute-force size, sieve range)\n"
    "Errors are reported on stderr as a single line: error: <Code>: <message>\n"
    "POSET_ZETA_CACHE=<dir> caches the f and F triangles as CSV between runs.\n";

int exit_code_for(ErrorCode code) {
    if (is_resource_cap(code)) return kExitResourceCap;
    switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::ParseError:
    case ErrorCode::DuplicateLabel:
    case ErrorCode::UnknownLabel:
    case ErrorCode::CycleDetected:
    case ErrorCode::EmptyPoset:
        return kExitConfig;
    default:
        return kExitComputation;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidConfig, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    fail(ErrorCode::InvalidConfig, "unknown format " + s);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            const std::int64_t n = std::stoll(s);
            return {n, n};
        }
        return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    } catch (const std::exception&) {
        fail(ErrorCode::InvalidConfig, "range must look like a:b, got " + s);
    }
}

ChainVector parse_chain_vector(const std::string& s) {
    ChainVector v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        Integer z;
        if (z.set_str(item, 10) != 0 || z < 0) fail(ErrorCode::InvalidConfig, "bad chain count " + item);
        v.counts.push_back(z);
    }
    if (v.counts.empty() || v.counts.back() == 0) fail(ErrorCode::InvalidConfig, "chain vector must end in a nonzero count");
    return v;
}

ExactPolynomial parse_coefficients(const std::string& s) {
    std::vector<Rational> c;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            c.push_back(parse_rational(item));
        } catch (const Error& e) {
            fail(ErrorCode::InvalidConfig, e.what());
        }
    }
    return ExactPolynomial(std::move(c));
}

// f triangle in f.csv and F triangle in F.csv, rows i,d,value.
template <class T>
std::vector<std::vector<T>> load_triangle(const fs::path& file) {
    std::vector<std::vector<T>> cols;
    std::ifstream in(file);
    if (!in) return cols;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) return {};
        const auto i = static_cast<std::size_t>(std::stol(a));
        const auto d = static_cast<std::size_t>(std::stol(b));
        if (cols.size() <= d) cols.resize(d + 1);
        if (cols[d].size() <= i) cols[d].resize(i + 1);
        cols[d][i] = T(parse_rational(c));
    }
    // Only complete leading columns are usable.
    std::size_t ok = 0;
    while (ok < cols.size() && cols[ok].size() == ok + 1) ++ok;
    cols.resize(ok);
    return cols;
}

template <class T>
void save_triangle(const fs::path& file, long columns, auto&& value) {
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << "i,d,value\n";
        for (long d = 0; d < columns; ++d)
            for (long i = 0; i <= d; ++i) out << i << ',' << d << ',' << value(i, d) << '\n';
    }
    fs::rename(tmp, file);
}

std::optional<fs::path> cache_dir() {
    const char* env = std::getenv("POSET_ZETA_CACHE");
    if (!env || !*env) return std::nullopt;
    return fs::path(env);
}

void load_cache() {
    const auto dir = cache_dir();
    if (!dir) return;
    auto& tables = detail::SubdivisionTables::instance();
    try {
        auto f = load_triangle<Rational>(*dir / "f.csv");
        std::vector<std::vector<Integer>> fi;
        for (auto& col : f) {
            std::vector<Integer> c;
            for (auto& q : col) {
                if (q.get_den() != 1) return;
                c.push_back(q.get_num());
            }
            fi.push_back(std::move(c));
        }
        tables.seed_f(std::move(fi));
        tables.seed_big_f(load_triangle<Rational>(*dir / "F.csv"));
    } catch (const std::exception&) {
        // A damaged cache is ignored and rebuilt.
    }
}

void save_cache() {
    const auto dir = cache_dir();
    if (!dir) return;
    std::error_code ec;
    fs::create_directories(*dir, ec);
    auto& tables = detail::SubdivisionTables::instance();
    try {
        save_triangle<Integer>(*dir / "f.csv", tables.f_columns(),
                               [](long i, long d) { return f_number(i, d).get_str(); });
        save_triangle<Rational>(*dir / "F.csv", tables.big_f_columns(),
                                [](long i, long d) { return to_exact_string(big_F_number(i, d)); });
    } catch (const std::exception&) {
    }
}

struct Common {
    std::string format = "csv";
    std::string output;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format = "csv") {
    c.format = default_format;
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--output,-o", c.output, "write to a file instead of standard output");
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(c.output);
    if (!out) fail(ErrorCode::InvalidConfig, "cannot write " + c.output);
    out << text;
}

Poset load_poset(const std::string& path) { return poset_from_json_text(read_file(path)); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeta series of finite posets under iterated barycentric subdivision"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    // tables
    Common tables_io;
    std::string table_kind = "f";
    long table_dmax = 7;
    auto* tables = app.add_subcommand("tables", "f, F or H number triangles as (i, d, value) rows");
    tables->add_option("--kind", table_kind, "f, F or H")->check(CLI::IsMember({"f", "F", "H"}))->capture_default_str();
    tables->add_option("--dmax", table_dmax, "largest d")->check(CLI::NonNegativeNumber)->capture_default_str();
    add_common(tables, tables_io);

    // zeta
    Common zeta_io;
    std::string zeta_input;
    std::size_t zeta_terms = 8;
    auto* zeta = app.add_subcommand("zeta", "chain counts, Euler characteristic, g and Z as a rational function");
    zeta->add_option("--input", zeta_input, "poset JSON file")->required();
    zeta->add_option("--terms", zeta_terms, "number of series coefficients")->capture_default_str();
    add_common(zeta, zeta_io);

    // subdivide
    Common sub_io;
    std::string sub_input;
    unsigned sub_times = 1;
    std::size_t sub_cap = kDefaultSubdivisionCap;
    auto* subdivide = app.add_subcommand("subdivide", "iterated barycentric subdivision as poset JSON");
    subdivide->add_option("--input", sub_input, "poset JSON file")->required();
    subdivide->add_option("--times", sub_times, "number of subdivisions")->capture_default_str();
    subdivide->add_option("--cap", sub_cap, "largest allowed element count")->capture_default_str();
    add_common(subdivide, sub_io, "json");

    // zeros and theorem-check share their source options
    struct Source {
        std::string input;
        std::string chains;
        unsigned long k_min = 0;
        std::optional<unsigned long> k_max;
        long precision = kDefaultPrecisionBits;
    };
    auto add_source = [](CLI::App* cmd, Source& s) {
        auto* in = cmd->add_option("--input", s.input, "poset JSON file");
        cmd->add_option("--chains", s.chains, "strict chain counts N0,N1,...,Nd instead of a poset")->excludes(in);
        cmd->add_option("--kmin", s.k_min, "first subdivision level")->capture_default_str();
        cmd->add_option("--kmax", s.k_max, "last subdivision level (default: largest k with ((d+1)!)^k < 2^200)");
        cmd->add_option("--precision", s.precision, "working precision in bits")->capture_default_str();
    };
    auto source_vector = [](const Source& s) {
        if (!s.chains.empty()) return parse_chain_vector(s.chains);
        if (s.input.empty()) fail(ErrorCode::InvalidConfig, "one of --input or --chains is required");
        return strict_chain_vector(load_poset(s.input));
    };

    Common zeros_io;
    Source zeros_src;
    std::string zeros_coeffs;
    auto* zeros = app.add_subcommand("zeros", "all zeros of g for Sd^k(P), or of a given polynomial");
    add_source(zeros, zeros_src);
    zeros->add_option("--coeffs", zeros_coeffs, "polynomial coefficients c0,c1,... (rationals allowed)");
    add_common(zeros, zeros_io);

    Common thm_io;
    Source thm_src;
    auto* theorem = app.add_subcommand("theorem-check", "maximal zero trajectory of Sd^k(P) against its limits");
    add_source(theorem, thm_src);
    add_common(theorem, thm_io);

    // pn
    Common pn_io;
    std::string pn_what;
    std::string pn_range = "2:43";
    std::string pn_method = "sieve";
    auto* pn = app.add_subcommand("pn", "squarefree divisibility posets P_n: chi or alpha over a range of n");
    pn->add_option("what", pn_what, "chi or alpha")->required()->check(CLI::IsMember({"chi", "alpha"}));
    pn->add_option("--range", pn_range, "a:b inclusive")->capture_default_str();
    pn->add_option("--method", pn_method, "chi route: sieve or poset")->check(CLI::IsMember({"sieve", "poset"}))->capture_default_str();
    add_common(pn, pn_io);

    // pi-weight
    Common pi_io;
    int pi_d = 1;
    std::int64_t pi_x = 100;
    auto* pi = app.add_subcommand("pi-weight", "count of squarefree m <= x with exactly d prime factors");
    pi->add_option("--d", pi_d, "weight")->required();
    pi->add_option("--x", pi_x, "bound")->required();
    add_common(pi, pi_io);

    // dim-report
    Common dim_io;
    std::vector<std::int64_t> dim_ns{100, 1000, 10000, 100000, 1000000, 10000000, 100000000};
    double band_lo = 0.3, band_hi = 3.0;
    auto* dim = app.add_subcommand("dim-report", "dim P_n against log n / log log n");
    dim->add_option("--n", dim_ns, "values of n (>= 16)")->capture_default_str();
    dim->add_option("--band-lo", band_lo)->capture_default_str();
    dim->add_option("--band-hi", band_hi)->capture_default_str();
    add_common(dim, dim_io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: InvalidConfig: " << e.what() << '\n';
        return kExitConfig;
    }

    load_cache();
    try {
        if (*tables) {
            const TableKind kind = table_kind == "f" ? TableKind::f : table_kind == "F" ? TableKind::F : TableKind::H;
            emit(tables_io, render(number_table(kind, table_dmax), parse_format(tables_io.format)));
        } else if (*zeta) {
            emit(zeta_io, render(zeta_table(load_poset(zeta_input), zeta_terms), parse_format(zeta_io.format)));
        } else if (*subdivide) {
            if (sub_io.format != "json") fail(ErrorCode::InvalidConfig, "subdivide only writes JSON");
            emit(sub_io, poset_to_json(iterated_subdivision(load_poset(sub_input), sub_times, sub_cap)).dump(2) + "\n");
        } else if (*zeros) {
            const Format fmt = parse_format(zeros_io.format);
            if (!zeros_coeffs.empty()) {
                if (!zeros_src.input.empty() || !zeros_src.chains.empty())
                    fail(ErrorCode::InvalidConfig, "--coeffs excludes --input and --chains");
                emit(zeros_io, render(roots_table(find_roots(parse_coefficients(zeros_coeffs), zeros_src.precision)), fmt));
            } else {
                const ChainVector v = source_vector(zeros_src);
                require_positive_dimension(v);
                const unsigned long k_max = zeros_src.k_max.value_or(default_k_max(v.dimension()));
                std::vector<std::pair<unsigned long, RootSet>> sets;
                ChainVector cur = transfer_iterate(v, zeros_src.k_min);
                for (unsigned long k = zeros_src.k_min; k <= k_max; ++k) {
                    sets.emplace_back(k, find_roots(g_polynomial(cur), zeros_src.precision));
                    cur = transfer_iterate(cur, 1);
                }
                emit(zeros_io, render(root_trajectory_table(sets), fmt));
            }
        } else if (*theorem) {
            TheoremConfig config;
            config.k_min = thm_src.k_min;
            config.k_max = thm_src.k_max;
            config.precision_bits = thm_src.precision;
            emit(thm_io, render(trajectory_table(theorem_report(source_vector(thm_src), config)),
                                parse_format(thm_io.format)));
        } else if (*pn) {
            const auto [lo, hi] = parse_range(pn_range);
            const Format fmt = parse_format(pn_io.format);
            if (hi < lo) {
                emit(pn_io, render(pn_what == "chi" ? chi_table(SquarefreeTable(1), 2, 1, ChiMethod::sieve)
                                                    : alpha_table({}),
                                   fmt));
            } else if (pn_what == "chi") {
                const ChiMethod method = pn_method == "poset" ? ChiMethod::poset : ChiMethod::sieve;
                emit(pn_io, render(chi_table(squarefree_sieve(hi), lo, hi, method), fmt));
            } else {
                const SquarefreeTable table = squarefree_sieve(hi);
                std::vector<AlphaRecord> records;
                for (std::int64_t n = lo; n <= hi; ++n) records.push_back(alpha_record(table, n));
                emit(pn_io, render(alpha_table(records), fmt));
            }
        } else if (*pi) {
            Table t{{"d", "x", "count"}, {}};
            t.add({pi_d, pi_x, pi_weight(pi_d, pi_x)});
            emit(pi_io, render(t, parse_format(pi_io.format)));
        } else if (*dim) {
            emit(dim_io, render(dimension_table(dim_asymptotic_report(dim_ns, band_lo, band_hi)),
                                parse_format(dim_io.format)));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: ResourceCap: out of memory\n";
        return kExitResourceCap;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return kExitComputation;
    }
    save_cache();
    return kExitOk;
}
