#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freeqg/cli.hpp"
#include "freeqg/sweep.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace freeqg;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "freeqg");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream l(line);
        std::string cell;
        while (std::getline(l, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("dim") {
    auto r = run({"dim", "--N", "3", "--k", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "k,dim\n0,1\n1,3\n2,8\n3,21\n");
    CHECK(run({"dim", "--N", "2", "--k", "3"}).out == "k,dim\n0,1\n1,2\n2,3\n3,4\n");
    CHECK(run({"dim", "--N", "1"}).code == 2);
}

TEST_CASE("moment") {
    CHECK(run({"moment", "x[1,1]*x[1,1]", "--N", "5"}).out == "1/5\n");
    CHECK(run({"moment", "x[1,1]^4", "--N", "3"}).out == "1/6\n");
    CHECK(run({"moment", "x[1,1]*x[1,2]", "--N", "3"}).out == "0\n");
    CHECK(run({"moment", "v[1,1]*v*[1,1]", "--N", "4", "--model", "u+"}).out == "1/4\n");
    CHECK(run({"moment", "x[1,1]^6", "--model", "limit"}).out == "5\n");
    CHECK(run({"moment", "v[1,1]*v[1,1]*v*[1,1]*v*[1,1]", "--model", "limit"}).out == "1\n");
}

TEST_CASE("exit codes") {
    CHECK(run({"moment", "x[1,", "--N", "3"}).code == 2);
    CHECK(run({"moment", "x[4,1]*x[4,1]", "--N", "3"}).code == 2);
    CHECK(run({"moment", "v[1,1]", "--N", "3", "--model", "o+"}).code == 2);
    CHECK(run({"moment", "x[1,1]^18", "--N", "3"}).code == 3);
    CHECK(run({"moment", "x[1,1]^8", "--N", "3", "--kmax", "6", "--solve-kmax", "6"}).code == 3);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"dn", "--N", "2"}).code == 2);
    CHECK(run({"selectp", "--degree", "1", "--epsilon", "0"}).code == 2);
    CHECK(run({"selectp", "--degree", "1", "--epsilon", "abc"}).code == 2);
    CHECK(run({"wg", "--k", "14", "--N", "3"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gram and wg") {
    auto g = run({"gram", "--k", "4", "--N", "3"});
    CHECK(g.code == 0);
    CHECK(g.out.find("9,3\n3,9\n") != std::string::npos);
    auto w = run({"wg", "--k", "4", "--N", "3", "--format", "json"});
    auto doc = nlohmann::json::parse(w.out);
    CHECK(doc["determinant"] == "72");
    CHECK(doc["matrix"][0][0] == "1/8");
    CHECK(doc["matrix"][0][1] == "-1/24");
    CHECK(doc["pairings"][1] == "{(1,4),(2,3)}");
    auto c = run({"wg", "--k", "4", "--N", "3", "--model", "u+", "--pattern", "11**", "--format", "json"});
    CHECK(nlohmann::json::parse(c.out)["matrix"][0][0] == "1/9");
    CHECK(run({"wg", "--k", "4", "--N", "3", "--model", "u+"}).code == 2);
}

TEST_CASE("dn") {
    auto r = run({"dn", "--N", "3,5,10,20,50"});
    REQUIRE(r.code == 0);
    auto rows = csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0][0] == "N");
    double previous = 1e9;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double value = std::stod(rows[i][1]), upper = std::stod(rows[i][2]);
        CHECK(value >= 1);
        CHECK(value <= upper);
        CHECK(value < previous);
        previous = value;
    }
    CHECK(std::stod(rows[5][2]) < std::stod(rows[1][2]));
}

TEST_CASE("selectp") {
    auto r = run({"selectp", "--degree", "2", "--epsilon", "0.5", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc[0]["p"] == 4 * doc[0]["m"].get<int>());
    CHECK(std::stod(doc[0]["achieved"]["value"].get<std::string>()) <= 1.5);
    CHECK(doc[0]["achieved"]["bits"] == 128);
    auto zero = csv(run({"selectp", "--degree", "0", "--epsilon", "0.5"}).out);
    CHECK(std::stoi(zero[1][3]) <= 8);
}

TEST_CASE("lp") {
    auto r = csv(run({"lp", "x[1,1]", "--N", "4", "--p", "2,4", "--scale"}).out);
    REQUIRE(r.size() == 3);
    CHECK(r[2][1] == "8/5");
    CHECK(std::fabs(std::stod(r[2][2]) - std::pow(1.6, 0.25)) < 1e-15);
    auto lim = csv(run({"lp", "x[1,1]", "--model", "limit", "--p", "6"}).out);
    CHECK(lim[1][1] == "5");
}

TEST_CASE("converge CSV") {
    auto r = run({"converge", "x[1,1]", "--N", "4,8,16", "--p", "2,4,8"});
    REQUIRE(r.code == 0);
    auto rows = csv(r.out);
    REQUIRE(rows.size() == 1 + 9 + 3);
    CHECK(r.out.rfind("N,p,lp_finite,lp_limit,gap,rd_bound\n", 0) == 0);
    for (std::size_t i = 1; i <= 9; ++i) {
        const int N = std::stoi(rows[i][0]);
        const int p = std::stoi(rows[i][1]);
        const double finite = std::stod(rows[i][2]);
        if (p == 4) CHECK(std::fabs(finite - std::pow(2.0 * N / (N + 1), 0.25)) < 1e-14);
        CHECK(finite <= std::stod(rows[i][5]));
    }
    for (int p_index = 0; p_index < 3; ++p_index) {
        double g4 = std::stod(rows[1 + p_index][4]), g8 = std::stod(rows[4 + p_index][4]),
               g16 = std::stod(rows[7 + p_index][4]);
        if (p_index > 0) {
            CHECK(g8 < g4);
            CHECK(g16 < g8);
        }
    }
    CHECK(rows[10][0] == "inf");
    CHECK(std::fabs(std::stod(rows[11][2]) - std::pow(2.0, 0.25)) < 1e-15);
    CHECK(std::fabs(std::stod(rows[12][2]) - std::pow(14.0, 0.125)) < 1e-15);
}

TEST_CASE("converge JSON and files are deterministic") {
    auto dir = std::filesystem::temp_directory_path() / "freeqg_cli_test";
    std::filesystem::create_directories(dir);
    auto a = dir / "a.json", b = dir / "b.json";
    const std::vector<std::string> base = {"converge", "x[1,1] + x[1,2]", "--N", "8,4,3", "--p", "2,4", "--format", "json"};
    auto args_a = base, args_b = base;
    args_a.insert(args_a.end(), {"--out", a.string()});
    args_b.insert(args_b.end(), {"--out", b.string()});
    REQUIRE(run(args_a).code == 0);
    REQUIRE(run(args_b).code == 0);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    auto doc = nlohmann::json::parse(text);
    CHECK(doc.contains("config"));
    CHECK(doc["meta"]["precision_bits"] == 128);
    CHECK(doc["meta"]["kmax"] == 12);
    CHECK(doc["meta"].contains("version"));
    // rows follow the configured N order, then the limit rows
    CHECK(doc["rows"][0]["N"] == 8);
    CHECK(doc["rows"][2]["N"] == 4);
    CHECK(doc["rows"][4]["N"] == 3);
    CHECK(doc["rows"][6]["N"] == "inf");
    CHECK(doc["rows"][0]["moment_finite"] == "2");
    CHECK(doc["rows"][6]["moment_limit"] == "2");
    CHECK(doc["rows"][1]["lp_finite"]["bits"] == 128);
    std::filesystem::remove_all(dir);
}

TEST_CASE("converge reports resource errors per row") {
    auto r = run({"converge", "x[1,1]", "--N", "3", "--p", "2,20", "--kmax", "8", "--solve-kmax", "8"});
    REQUIRE(r.code == 0);
    auto rows = csv(r.out);
    CHECK(rows[1][2] != "NA");
    CHECK(rows[2][2] == "resource_error(k=20 N=3)");
    CHECK(rows[2][4] == "NA");
}

TEST_CASE("converge configuration errors") {
    CHECK(run({"converge", "x[1,1]", "--N", "2", "--p", "2"}).code == 2);
    CHECK(run({"converge", "x[1,1]", "--N", "2", "--p", "2", "--no-rd"}).code == 0);
    CHECK(run({"converge", "x[1,1]", "--N", "3", "--p", "3"}).code == 2);
    CHECK(run({"converge", "v[1,1]", "--N", "3", "--p", "2"}).code == 2);
    CHECK(run({"converge", "x[1,1", "--N", "3", "--p", "2"}).code == 2);
}

TEST_CASE("check") {
    auto r = run({"check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    auto results = run_invariant_suite();
    CHECK(results.size() >= 10);
}
