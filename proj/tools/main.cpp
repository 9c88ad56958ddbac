#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dcurve/format.hpp"
#include "dcurve/frenet.hpp"
#include "dcurve/involute.hpp"
#include "dcurve/parallel.hpp"
#include "dcurve/verify.hpp"

namespace {

using namespace dcurve;

struct Output {
    std::string format = "csv";
    std::string path;  // empty writes to stdout
};

void emit(const Table& t, const std::vector<std::pair<std::string, Cell>>& meta,
          const Output& o) {
    std::string text = o.format == "json" ? to_json(t, meta) : to_csv(t);
    if (o.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + o.path + "'");
    f << text;
    f.flush();
    if (!f) throw Error("failed while writing '" + o.path + "'");
}

CurveDef resolve_curve(const std::string& spec) {
    if (is_builtin(spec)) return builtin(spec);
    std::ifstream f(spec, std::ios::binary);
    if (!f) throw Error("'" + spec + "' is neither a builtin curve nor a readable file");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_curve(ss.str());
}

double parse_number(std::string_view tok, const std::string& whole) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw Error("bad range '" + whole + "', expected lo:hi:n");
    return v;
}

/// lo:hi:n with n inclusive endpoints.
std::vector<double> parse_range(const std::string& text) {
    auto c1 = text.find(':');
    auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        text.find(':', c2 + 1) != std::string::npos)
        throw Error("bad range '" + text + "', expected lo:hi:n");
    double lo = parse_number(std::string_view(text).substr(0, c1), text);
    double hi = parse_number(std::string_view(text).substr(c1 + 1, c2 - c1 - 1), text);
    std::string_view ntok = std::string_view(text).substr(c2 + 1);
    long n = 0;
    auto [p, ec] = std::from_chars(ntok.data(), ntok.data() + ntok.size(), n);
    if (ec != std::errc{} || p != ntok.data() + ntok.size())
        throw Error("bad range '" + text + "', expected lo:hi:n");
    if (n < 2) throw Error("range needs at least 2 points");
    if (!(hi > lo)) throw Error("range needs hi > lo");

    std::vector<double> g(static_cast<size_t>(n));
    double step = (hi - lo) / static_cast<double>(n - 1);
    for (long i = 0; i < n; ++i) g[static_cast<size_t>(i)] = lo + step * static_cast<double>(i);
    g.front() = lo;
    g.back() = hi;
    return g;
}

/// The one grid builder every subcommand shares, so equal selections produce
/// bit-identical s columns.
std::vector<double> selection_grid(const std::optional<double>& at, const std::string& range) {
    if (at && !range.empty()) throw Error("--at and --range are mutually exclusive");
    if (at) return {*at};
    if (!range.empty()) return parse_range(range);
    throw Error("one of --at or --range is required");
}

void push_vec(std::vector<Cell>& row, const Vec3& v) {
    row.push_back(Cell::val(v.x));
    row.push_back(Cell::val(v.y));
    row.push_back(Cell::val(v.z));
}

void vec_columns(std::vector<std::string>& cols, const std::string& base) {
    cols.push_back(base + "_x");
    cols.push_back(base + "_y");
    cols.push_back(base + "_z");
}

int cmd_frenet(const CurveDef& c, const std::vector<double>& grid, const Output& o) {
    Table t;
    t.columns = {"s"};
    for (const char* base : {"t", "n", "b", "t_star", "n_star", "b_star"})
        vec_columns(t.columns, base);
    t.columns.insert(t.columns.end(), {"k1", "k2", "k1_star", "k2_star"});
    vec_columns(t.columns, "w");
    vec_columns(t.columns, "w_star");

    const int n = static_cast<int>(grid.size());
    t.rows.resize(grid.size());
    parallel_for_index(n, ExecMode::parallel, [&](int i) {
        SplitApparatus sp = split(frenet_at(c, grid[i]));
        std::vector<Cell>& row = t.rows[static_cast<size_t>(i)];
        row.push_back(Cell::val(grid[i]));
        for (const Vec3* v : {&sp.t, &sp.n, &sp.b, &sp.t_star, &sp.n_star, &sp.b_star})
            push_vec(row, *v);
        row.push_back(Cell::val(sp.k1));
        row.push_back(Cell::val(sp.k2));
        row.push_back(Cell::val(sp.k1_star));
        row.push_back(Cell::val(sp.k2_star));
        push_vec(row, sp.w);
        push_vec(row, sp.w_star);
    });
    emit(t, {{"command", Cell::str("frenet")}, {"curve", Cell::str(c.name)}}, o);
    return 0;
}

int cmd_involute(const CurveDef& c, const std::vector<double>& grid, double c1, double c2,
                 const Output& o) {
    double smax = grid.back();
    for (double s : grid) smax = std::max(smax, s);
    if (!(c1 > smax)) throw OutOfDomain("c1 must exceed every sampled parameter value");
    if (unit_speed_deviation(c, grid) > 1e-9)
        std::cerr << "warning: curve '" << c.name
                  << "' is not unit speed; involute formulas assume dual arc length\n";

    InvolutePair P{c, c1, c2};
    Table t;
    t.columns = {"s"};
    vec_columns(t.columns, "beta");
    vec_columns(t.columns, "beta_star");
    t.columns.insert(t.columns.end(), {"dist", "dist_star", "kappa_bar", "kappa_bar_star",
                                       "tau_bar", "tau_bar_star", "phi", "phi_star"});
    vec_columns(t.columns, "w_bar");
    vec_columns(t.columns, "w_bar_star");
    vec_columns(t.columns, "c_bar");
    vec_columns(t.columns, "c_bar_star");

    const int n = static_cast<int>(grid.size());
    t.rows.resize(grid.size());
    parallel_for_index(n, ExecMode::parallel, [&](int i) {
        double s = grid[i];
        FrenetApparatus evo = frenet_at(c, s);
        DualScalar lam = involute_lambda(P, s);
        DualVec3 beta = involute_point(P, s);
        DualScalar dist = involute_distance(P, s);
        DualScalar kbar = involute_kappa(evo, lam);
        DualScalar tbar = involute_tau(evo, lam);
        DualAngle phi = darboux_angle(evo);
        DualVec3 wbar = involute_darboux(evo, lam);
        DualVec3 cbar = involute_darboux_direction(evo);

        std::vector<Cell>& row = t.rows[static_cast<size_t>(i)];
        row.push_back(Cell::val(s));
        push_vec(row, beta.real);
        push_vec(row, beta.dual);
        for (double v : {dist.real, dist.dual, kbar.real, kbar.dual, tbar.real, tbar.dual,
                         phi.phi, phi.phi_star})
            row.push_back(Cell::val(v));
        push_vec(row, wbar.real);
        push_vec(row, wbar.dual);
        push_vec(row, cbar.real);
        push_vec(row, cbar.dual);
    });
    emit(t,
         {{"command", Cell::str("involute")},
          {"curve", Cell::str(c.name)},
          {"c1", Cell::val(c1)},
          {"c2", Cell::val(c2)}},
         o);
    return 0;
}

int cmd_sample(const CurveDef& c, const std::vector<double>& grid, double c1, double c2,
               const Output& o) {
    double smax = grid.back();
    for (double s : grid) smax = std::max(smax, s);
    if (!(c1 > smax)) throw OutOfDomain("c1 must exceed every sampled parameter value");

    InvolutePair P{c, c1, c2};
    Table t;
    t.columns = {"s"};
    vec_columns(t.columns, "alpha");
    vec_columns(t.columns, "alpha_star");
    vec_columns(t.columns, "beta");
    vec_columns(t.columns, "beta_star");

    const int n = static_cast<int>(grid.size());
    t.rows.resize(grid.size());
    parallel_for_index(n, ExecMode::parallel, [&](int i) {
        double s = grid[i];
        DualVec3 alpha = position(c, s);
        DualVec3 beta = involute_point(P, s);
        std::vector<Cell>& row = t.rows[static_cast<size_t>(i)];
        row.push_back(Cell::val(s));
        push_vec(row, alpha.real);
        push_vec(row, alpha.dual);
        push_vec(row, beta.real);
        push_vec(row, beta.dual);
    });
    emit(t,
         {{"command", Cell::str("sample")},
          {"curve", Cell::str(c.name)},
          {"c1", Cell::val(c1)},
          {"c2", Cell::val(c2)}},
         o);
    return 0;
}

int cmd_verify(const VerifyOptions& opt, const Output& o) {
    VerificationReport rep = run_verification(opt);

    Table t;
    t.columns = {"suite", "curve", "check", "grid_n", "max_residual", "tolerance", "status",
                 "note"};
    for (const CheckResult& c : rep.checks) {
        t.rows.push_back({Cell::str(c.suite), Cell::str(c.curve), Cell::str(c.name),
                          Cell::count(c.grid_n), Cell::val(c.max_residual),
                          Cell::val(c.tolerance),
                          Cell::str(c.informational ? "info" : (c.pass ? "pass" : "fail")),
                          Cell::str(c.note)});
    }
    bool ok = rep.overall_pass();
    t.rows.push_back({Cell::str("overall"), Cell::str(""), Cell::str(""), Cell::count(0),
                      Cell::str(""), Cell::str(""), Cell::str(ok ? "pass" : "fail"),
                      Cell::str("")});
    emit(t, {{"command", Cell::str("verify")}, {"overall_pass", Cell::truth(ok)}}, o);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual curve toolkit: Frenet frames, involutes, verification"};
    app.require_subcommand(1);

    std::string curve_spec, range, out_path, format = "csv";
    std::optional<double> at;
    double c1 = 0.0, c2 = 0.0;

    auto add_common = [&](CLI::App* cmd, bool needs_grid) {
        cmd->add_option("--curve", curve_spec, "builtin curve name or curve file path")
            ->required();
        if (needs_grid) {
            auto* at_opt = cmd->add_option("--at", at, "single parameter value");
            cmd->add_option("--range", range, "parameter range lo:hi:n, endpoints inclusive")
                ->excludes(at_opt);
        }
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "output file (default: standard output)");
    };

    CLI::App* frenet = app.add_subcommand("frenet", "Frenet apparatus along the curve");
    add_common(frenet, true);

    CLI::App* involute = app.add_subcommand("involute", "involute geometry along the curve");
    add_common(involute, true);
    involute->add_option("--c1", c1, "involute offset constant, real part")->required();
    involute->add_option("--c2", c2, "involute offset constant, dual part");

    CLI::App* sample = app.add_subcommand("sample", "polyline export of curve and involute");
    add_common(sample, true);
    sample->add_option("--c1", c1, "involute offset constant, real part")->required();
    sample->add_option("--c2", c2, "involute offset constant, dual part");

    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    std::vector<std::string> suites;
    std::vector<double> c2_values;
    std::string vcurve;
    double vc1 = 10.0;
    int grid_n = 50;
    std::optional<double> tol;
    bool serial = false;
    verify->add_option("--suite", suites,
                       "suites to run (all, algebra, linear, jets, frenet, involute, helix, "
                       "crosscheck)");
    verify->add_option("--curve", vcurve, "restrict to one builtin curve or curve file");
    verify->add_option("--tol", tol, "override the tolerance of every assertive check");
    verify->add_option("--grid", grid_n, "grid points per curve check");
    verify->add_option("--c1", vc1, "involute offset constant, real part");
    verify->add_option("--c2", c2_values, "involute offset constants, dual part (repeatable)");
    verify->add_flag("--serial", serial, "run grid kernels on one thread");
    verify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--out", out_path, "output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Output o{format, out_path};
        if (frenet->parsed())
            return cmd_frenet(resolve_curve(curve_spec), selection_grid(at, range), o);
        if (involute->parsed())
            return cmd_involute(resolve_curve(curve_spec), selection_grid(at, range), c1, c2, o);
        if (sample->parsed())
            return cmd_sample(resolve_curve(curve_spec), selection_grid(at, range), c1, c2, o);
        if (verify->parsed()) {
            VerifyOptions opt;
            opt.suites = suites;
            if (!vcurve.empty()) opt.curves.push_back(resolve_curve(vcurve));
            opt.tol = tol;
            opt.grid_n = grid_n;
            opt.c1 = vc1;
            if (!c2_values.empty()) opt.c2_values = c2_values;
            opt.mode = serial ? ExecMode::serial : ExecMode::parallel;
            return cmd_verify(opt, o);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
