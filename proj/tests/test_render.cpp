#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "poset_zeta/poset_json.hpp"
#include "poset_zeta/render.hpp"

using namespace poset_zeta;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + POSET_ZETA_CLI + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

CliRun run_cli_stderr(const std::string& args) {
    const std::string cmd = std::string(POSET_ZETA_CLI) + " " + args + " 2>&1 >/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(POSET_ZETA_SAMPLES) + "/" + name; }

} // namespace

TEST(Render, AlphaRow) {
    const Table t = alpha_table({alpha_record(30)});
    EXPECT_EQ(to_csv(t), "n,chi,mertens,dim,top_chains,H1,alpha\n30,4,-3,2,6,1/2,3/4\n");
    const auto j = to_json(t);
    EXPECT_EQ(j[0]["alpha"], "3/4");
    EXPECT_EQ(j[0]["H1"], "1/2");
    EXPECT_EQ(j[0]["chi"], 4);
}

TEST(Render, EmptyRangeIsHeaderOnly) {
    EXPECT_EQ(to_csv(alpha_table({})), "n,chi,mertens,dim,top_chains,H1,alpha\n");
    EXPECT_EQ(to_csv(chi_table(squarefree_sieve(10), 5, 4, ChiMethod::sieve)), "n,chi,mertens\n");
    EXPECT_EQ(to_json(alpha_table({})).dump(), "[]");
}

TEST(Render, LinearRootRow) {
    const Table t = roots_table(find_roots(ExactPolynomial({2, -1}), 256));
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][1].text, "2.0000000000000000000e+00");
    EXPECT_EQ(t.rows[0][2].text, "0");
    EXPECT_EQ(t.rows[0][5].text, "256");
}

TEST(Render, BigIntegersStayExactInJson) {
    Table t{{"v"}, {}};
    t.add({Integer("123456789012345678901234567890")});
    EXPECT_EQ(to_json(t)[0]["v"], "123456789012345678901234567890");
    EXPECT_EQ(to_csv(t), "v\n123456789012345678901234567890\n");
}

TEST(Render, RationalFieldsParseBack) {
    const Table t = number_table(TableKind::F, 9);
    for (const auto& row : t.rows)
        EXPECT_EQ(parse_rational(row[2].text), big_F_number(std::stol(row[0].text), std::stol(row[1].text)));
}

TEST(Cli, TablesCommand) {
    const CliRun r = run_cli("tables --kind H --dmax 7 --format csv");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\n3,5,5459/10411\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n8,7,0\n"), std::string::npos);
    EXPECT_EQ(r.out.rfind("i,d,value\n", 0), 0u);
}

TEST(Cli, OutputIsDeterministic) {
    const std::string args = "theorem-check --input " + sample("p30.json") + " --kmax 5";
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TheoremCheckEndsNearOne) {
    const CliRun r = run_cli("theorem-check --input " + sample("p30.json") + " --kmax 8");
    ASSERT_EQ(r.status, 0);
    const auto last_start = r.out.rfind('\n', r.out.size() - 2) + 1;
    const std::string last = r.out.substr(last_start);
    EXPECT_EQ(last.rfind("8,", 0), 0u);
    std::vector<std::string> cells;
    std::stringstream in(last);
    for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 9u);
    EXPECT_NEAR(std::stod(cells[4]), 1.0, 0.01);
}

TEST(Cli, SubdivideRoundTrips) {
    const CliRun r = run_cli("subdivide --input " + sample("p6.json") + " --times 2");
    ASSERT_EQ(r.status, 0);
    const Poset read = poset_from_json_text(r.out);
    const Poset direct = iterated_subdivision(poset_from_json_text(R"({"elements":["2","3","5","6"],"relations":[["2","6"],["3","6"]]})"), 2);
    ASSERT_EQ(read.labels(), direct.labels());
    for (std::size_t a = 0; a < read.size(); ++a)
        for (std::size_t b = 0; b < read.size(); ++b) ASSERT_EQ(read.less(a, b), direct.less(a, b));
}

TEST(Cli, PnChiRows) {
    const CliRun r = run_cli("pn chi --range 2:43");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\n30,4,-3\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n43,4,-3\n"), std::string::npos);
    const CliRun empty = run_cli("pn alpha --range 10:9");
    EXPECT_EQ(empty.out, "n,chi,mertens,dim,top_chains,H1,alpha\n");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("").status, 2);
    EXPECT_EQ(run_cli("tables --kind Q").status, 2);
    EXPECT_EQ(run_cli("zeta --input /nonexistent.json").status, 2);
    EXPECT_EQ(run_cli("subdivide --input " + sample("p30.json") + " --times 3 --cap 500").status, 4);
    EXPECT_EQ(run_cli("pn chi --range 2:100000000").status, 4);
    EXPECT_EQ(run_cli("theorem-check --chains 5").status, 3);
    EXPECT_EQ(run_cli("zeros --coeffs 7").status, 3);
    EXPECT_EQ(run_cli("--help").status, 0);
    const CliRun err = run_cli_stderr("zeros --coeffs 7");
    EXPECT_EQ(err.out, "error: DegreeZero: polynomial has no roots (degree < 1)\n");
}

TEST(Cli, CacheDirectoryIsUsed) {
    const fs::path dir = fs::temp_directory_path() / ("poset_zeta_cache_" + std::to_string(oracle::seed()));
    fs::remove_all(dir);
    const std::string env = "POSET_ZETA_CACHE=" + dir.string();
    const CliRun first = run_cli("tables --kind F --dmax 9", env);
    ASSERT_EQ(first.status, 0);
    EXPECT_TRUE(fs::exists(dir / "f.csv"));
    EXPECT_TRUE(fs::exists(dir / "F.csv"));
    const CliRun second = run_cli("tables --kind F --dmax 9", env);
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(first.out, run_cli("tables --kind F --dmax 9").out);
    fs::remove_all(dir);
}
