#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dcurve/curve.hpp"
#include "dcurve/frenet.hpp"
#include "doctest.h"
#include "json.hpp"
#include "plane_fit.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("DCURVE_CLI");
    REQUIRE_MESSAGE(p != nullptr, "DCURVE_CLI must point at the dcurve binary");
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_file(const std::string& stem) {
    static std::atomic<int> counter{0};
    return fs::temp_directory_path() /
           (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
}

struct RunResult {
    int code = -1;
    std::string out, err;
};

RunResult run_cli(const std::string& args) {
    fs::path of = scratch_file("dcurve_out");
    fs::path ef = scratch_file("dcurve_err");
    std::string cmd =
        "\"" + cli_path() + "\" " + args + " >" + of.string() + " 2>" + ef.string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = rc == -1 ? -1 : WEXITSTATUS(rc);
    r.out = slurp(of);
    r.err = slurp(ef);
    fs::remove(of);
    fs::remove(ef);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            row.push_back(field);
            field.clear();
        } else if (ch == '\n') {
            row.push_back(field);
            field.clear();
            rows.push_back(row);
            row.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

size_t col_index(const std::vector<std::string>& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    REQUIRE_MESSAGE(it != header.end(), ("missing column " + name));
    return static_cast<size_t>(it - header.begin());
}

fs::path write_curve_file(const std::string& stem, const std::string& text) {
    fs::path p = scratch_file(stem);
    std::ofstream out(p);
    out << text;
    return p;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run_cli("verify --suite algebra").code == 0);
    CHECK(run_cli("verify --suite frenet --tol 1e-30").code == 1);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("frenet --help").code == 0);

    RunResult bad_curve = run_cli("frenet --curve nope --at 0");
    CHECK(bad_curve.code == 2);
    CHECK(bad_curve.err.find("neither a builtin curve") != std::string::npos);

    CHECK(run_cli("frenet --curve helix_3_4 --range 0:8:1").code == 2);
    CHECK(run_cli("frenet --curve helix_3_4 --range 8:0:5").code == 2);
    CHECK(run_cli("frenet --curve helix_3_4 --range banana").code == 2);
    CHECK(run_cli("frenet --curve helix_3_4").code == 2);
    CHECK(run_cli("frenet --curve helix_3_4 --at 0 --range 0:1:5").code == 2);
    CHECK(run_cli("frenet --at 0").code == 2);
    CHECK(run_cli("frenet --curve helix_3_4 --at 0 --format xml").code == 2);
    CHECK(run_cli("verify --suite bogus").code == 2);
    CHECK(run_cli("nonsense").code == 2);

    RunResult inside = run_cli("involute --curve helix_3_4 --range 0:8:5 --c1 4");
    CHECK(inside.code == 2);
    CHECK(inside.err.find("c1") != std::string::npos);
}

TEST_CASE("degenerate curve reports vanishing curvature") {
    fs::path p = write_curve_file("line_curve",
                                  "curve line {\n"
                                  "  real = (s, 2*s, 0)\n"
                                  "  domain = [0, 2]\n"
                                  "}\n");
    RunResult r = run_cli("frenet --curve " + p.string() + " --at 1");
    fs::remove(p);
    CHECK(r.code == 2);
    CHECK(r.err.find("curvature") != std::string::npos);
}

TEST_CASE("curve files work wherever builtins do") {
    fs::path p = write_curve_file("ring_curve",
                                  "curve ring {\n"
                                  "  real = (cos(s), sin(s), 0)\n"
                                  "  domain = [0, 6]\n"
                                  "}\n");
    RunResult r = run_cli("frenet --curve " + p.string() + " --at 1 --format json");
    fs::remove(p);
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["curve"] == "ring");
    CHECK(j["rows"][0]["k1"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non unit speed involute warns but still runs") {
    RunResult r = run_cli("involute --curve twisted_cubic --at 1 --c1 10");
    CHECK(r.code == 0);
    CHECK(r.err.find("unit speed") != std::string::npos);
    RunResult quiet = run_cli("involute --curve helix_3_4 --at 1 --c1 10");
    CHECK(quiet.code == 0);
    CHECK(quiet.err.empty());
}

TEST_CASE("reruns are byte identical") {
    const std::string args = "frenet --curve wave_dual --range 0.2:5.8:25 --format csv";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const std::string jargs = "involute --curve helix_3_4 --range 0:8:25 --c1 10 --format json";
    RunResult c = run_cli(jargs);
    RunResult d = run_cli(jargs);
    CHECK(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("serial flag changes nothing in the output") {
    RunResult par = run_cli("verify --suite jets --grid 10 --format csv");
    RunResult ser = run_cli("verify --suite jets --grid 10 --serial --format csv");
    CHECK(par.code == 0);
    CHECK(par.out == ser.out);
}

TEST_CASE("json numbers round trip exactly") {
    RunResult r = run_cli("frenet --curve helix_3_4 --at 0 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "frenet");
    CHECK(j["curve"] == "helix_3_4");
    REQUIRE(j["rows"].size() == 1);
    const auto& row = j["rows"][0];

    dcurve::SplitApparatus sp = dcurve::split(dcurve::frenet_at(dcurve::builtin("helix_3_4"), 0.0));
    CHECK(row["k1"].get<double>() == sp.k1);
    CHECK(row["k2"].get<double>() == sp.k2);
    CHECK(row["k1_star"].get<double>() == sp.k1_star);
    CHECK(row["t_x"].get<double>() == sp.t.x);
    CHECK(row["n_y"].get<double>() == sp.n.y);
    CHECK(row["b_z"].get<double>() == sp.b.z);
    CHECK(row["w_star_z"].get<double>() == sp.w_star.z);
}

TEST_CASE("involute distance columns carry the offset") {
    RunResult r = run_cli("involute --curve helix_3_4 --at 4 --c1 10 --c2 0.5 --format csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].size() == 27);
    CHECK(rows[1][col_index(rows[0], "dist")] == "6");
    CHECK(rows[1][col_index(rows[0], "dist_star")] == "0.5");
}

TEST_CASE("sample emits both polylines on the shared grid") {
    RunResult r = run_cli("sample --curve helix_3_4 --range 0:8:2 --c1 10 --format csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].size() == 13);
    CHECK(rows[1][0] == "0");
    CHECK(rows[2][0] == "8");

    RunResult f = run_cli("frenet --curve helix_3_4 --range 0:8:25 --format csv");
    RunResult s = run_cli("sample --curve helix_3_4 --range 0:8:25 --c1 10 --format csv");
    auto fr = parse_csv(f.out);
    auto sr = parse_csv(s.out);
    REQUIRE(fr.size() == 26);
    REQUIRE(fr.size() == sr.size());
    for (size_t i = 1; i < fr.size(); ++i) CHECK(fr[i][0] == sr[i][0]);
    CHECK(fr[25][0] == "8");
}

TEST_CASE("the involute of a helix is planar") {
    RunResult r = run_cli("involute --curve helix_3_4 --range 0:8:40 --c1 10 --format csv");
    REQUIRE(r.code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 40 + 1);
    size_t bx = col_index(rows[0], "beta_x");
    size_t by = col_index(rows[0], "beta_y");
    size_t bz = col_index(rows[0], "beta_z");
    std::vector<dcurve::Vec3> pts;
    for (size_t i = 1; i < rows.size(); ++i)
        pts.push_back({std::stod(rows[i][bx]), std::stod(rows[i][by]), std::stod(rows[i][bz])});
    CHECK(testutil::plane_fit_residual(pts) <= 1e-8);
}

TEST_CASE("verify output formats") {
    RunResult csv = run_cli("verify --suite helix --curve twisted_cubic --format csv");
    CHECK(csv.code == 0);
    auto rows = parse_csv(csv.out);
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0] == std::vector<std::string>{"suite", "curve", "check", "grid_n",
                                              "max_residual", "tolerance", "status", "note"});
    const auto& last = rows.back();
    CHECK(last[0] == "overall");
    CHECK(last[6] == "pass");

    RunResult js = run_cli("verify --suite helix --curve twisted_cubic --format json");
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["command"] == "verify");
    CHECK(j["overall_pass"] == true);

    RunResult bad = run_cli("verify --suite frenet --curve circle --tol 1e-30 --format json");
    CHECK(bad.code == 1);
    auto jb = nlohmann::json::parse(bad.out);
    CHECK(jb["overall_pass"] == false);
}

TEST_CASE("out file matches stdout") {
    fs::path p = scratch_file("dcurve_file");
    RunResult direct = run_cli("frenet --curve circle --range 0:6.2:10 --format json");
    RunResult filed =
        run_cli("frenet --curve circle --range 0:6.2:10 --format json --out " + p.string());
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(p) == direct.out);
    fs::remove(p);

    RunResult bad = run_cli("frenet --curve circle --at 0 --out /nonexistent_dir_zz/x.csv");
    CHECK(bad.code == 2);
}
