#include "dcurve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dcurve/format.hpp"
#include "dcurve/frenet.hpp"
#include "dcurve/involute.hpp"
#include "dcurve/oracle.hpp"

namespace dcurve {

bool VerificationReport::overall_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s = {"algebra",  "linear", "jets",      "frenet",
                                               "involute", "helix",  "crosscheck"};
    return s;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::mt19937_64 seeded(const std::string& tag) {
    std::seed_seq seq(tag.begin(), tag.end());
    return std::mt19937_64(seq);
}

/// max |x| over the vector; any nan wins so assertive checks cannot pass on it.
double reduce_max(const std::vector<double>& xs) {
    double worst = 0.0;
    for (double x : xs) {
        if (std::isnan(x)) return x;
        worst = std::max(worst, std::abs(x));
    }
    return worst;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return kNaN;
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

/// Accumulator for informational rows: nan points are counted, not propagated.
struct Acc {
    double worst = 0.0;
    int nans = 0;
    void add(double x) {
        if (std::isnan(x)) {
            ++nans;
            return;
        }
        worst = std::max(worst, std::abs(x));
    }
    double value(int total) const { return total > 0 && nans == total ? kNaN : worst; }
    std::string note(int total, std::string base) const {
        if (nans == 0) return base;
        if (!base.empty()) base += "; ";
        return base + "nan at " + std::to_string(nans) + " of " + std::to_string(total) +
               " points";
    }
};

struct Builder {
    const VerifyOptions& opt;
    std::vector<CheckResult> rows;

    void assertive(std::string suite, std::string curve, std::string name, int n, double residual,
                   double tol, std::string note = "") {
        CheckResult r;
        r.suite = std::move(suite);
        r.curve = std::move(curve);
        r.name = std::move(name);
        r.grid_n = n;
        r.max_residual = residual;
        r.tolerance = opt.tol ? *opt.tol : tol;
        r.pass = std::isfinite(residual) && residual <= r.tolerance;
        r.note = std::move(note);
        rows.push_back(std::move(r));
    }

    /// Passes when the residual exceeds the tolerance; used where a signal is
    /// required, not an agreement.
    void exceeds(std::string suite, std::string curve, std::string name, int n, double residual,
                 double tol, std::string note) {
        CheckResult r;
        r.suite = std::move(suite);
        r.curve = std::move(curve);
        r.name = std::move(name);
        r.grid_n = n;
        r.max_residual = residual;
        r.tolerance = opt.tol ? *opt.tol : tol;
        r.pass = std::isfinite(residual) && residual > r.tolerance;
        r.note = std::move(note);
        rows.push_back(std::move(r));
    }

    void info(std::string suite, std::string curve, std::string name, int n, double residual,
              double tol, std::string note) {
        CheckResult r;
        r.suite = std::move(suite);
        r.curve = std::move(curve);
        r.name = std::move(name);
        r.grid_n = n;
        r.max_residual = residual;
        r.tolerance = tol;
        r.pass = true;
        r.informational = true;
        r.note = std::move(note);
        rows.push_back(std::move(r));
    }

    void skipped(std::string suite, std::string curve, std::string name, std::string note) {
        info(std::move(suite), std::move(curve), std::move(name), 0, kNaN, 0.0, std::move(note));
    }
};

bool wants(const VerifyOptions& opt, const std::string& suite) {
    if (opt.suites.empty()) return true;
    for (const auto& s : opt.suites)
        if (s == "all" || s == suite) return true;
    return false;
}

std::string with_c2(const std::string& base, double c2) {
    return base + "[c2=" + fmt_double(c2) + "]";
}

std::vector<double> involute_grid(const CurveDef& c, double c1, int n) {
    double hi = std::min(c.hi, c1 - 1e-3);
    if (!(hi > c.lo))
        throw OutOfDomain("involute offset c1 = " + fmt_double(c1) +
                          " leaves no parameter range on curve '" + c.name + "'");
    return interior_grid(c.lo, hi, n);
}

// ---------------------------------------------------------------- algebra

void run_algebra(Builder& b) {
    const int n = 100000;
    const ExecMode mode = b.opt.mode;

    {
        auto g = seeded("algebra.ring");
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        std::vector<double> in(6 * n);
        for (double& v : in) v = d(g);

        std::vector<double> res(n);
        parallel_for_index(n, mode, [&](int i) {
            const double* p = &in[6 * i];
            DualScalar x{p[0], p[1]}, y{p[2], p[3]}, z{p[4], p[5]};
            double r = rel_gap(x + y, y + x);
            r = std::max(r, rel_gap((x + y) + z, x + (y + z)));
            r = std::max(r, rel_gap(x * y, y * x));
            r = std::max(r, rel_gap((x * y) * z, x * (y * z)));
            r = std::max(r, rel_gap(x * (y + z), x * y + x * z));
            res[i] = r;
        });
        b.assertive("algebra", "", "ring_axioms", n, reduce_max(res), 1e-12);

        parallel_for_index(n, mode, [&](int i) {
            const double* p = &in[6 * i];
            DualScalar x{p[0], p[1]}, y{p[2], p[3]};
            const DualScalar eps{0.0, 1.0};
            res[i] = std::max(mag((eps * x) * (eps * y)), mag(eps * eps));
        });
        b.assertive("algebra", "", "eps_nilpotent", n, reduce_max(res), 1e-12);
    }

    {
        auto g = seeded("algebra.div");
        std::uniform_real_distribution<double> d(-2.0, 2.0), away(0.25, 2.25), coin(0.0, 1.0);
        std::vector<double> in(4 * n);
        for (int i = 0; i < n; ++i) {
            in[4 * i] = d(g);
            in[4 * i + 1] = d(g);
            in[4 * i + 2] = (coin(g) < 0.5 ? -1.0 : 1.0) * away(g);
            in[4 * i + 3] = d(g);
        }
        std::vector<double> res(n);
        parallel_for_index(n, mode, [&](int i) {
            const double* p = &in[4 * i];
            DualScalar x{p[0], p[1]}, y{p[2], p[3]};
            res[i] = std::max(rel_gap((x / y) * y, x), rel_gap((x * y) / y, x));
        });
        b.assertive("algebra", "", "div_roundtrip", n, reduce_max(res), 1e-12);
    }

    // each lift against the first-order Taylor expansion with an independently
    // written slope
    auto lift_check = [&](const std::string& name, double lo, double hi, auto&& apply,
                          auto&& value, auto&& slope) {
        auto g = seeded("algebra." + name);
        std::uniform_real_distribution<double> da(lo, hi), db(-2.0, 2.0);
        std::vector<double> in(2 * n);
        for (int i = 0; i < n; ++i) {
            in[2 * i] = da(g);
            in[2 * i + 1] = db(g);
        }
        std::vector<double> res(n);
        parallel_for_index(n, mode, [&](int i) {
            double a = in[2 * i], d = in[2 * i + 1];
            DualScalar got = apply(DualScalar{a, d});
            res[i] = rel_gap(got, DualScalar{value(a), d * slope(a)});
        });
        b.assertive("algebra", "", name, n, reduce_max(res), 1e-12);
    };
    lift_check(
        "lift_sin", -2.0, 2.0, [](const DualScalar& x) { return sin(x); },
        [](double a) { return std::sin(a); }, [](double a) { return std::cos(a); });
    lift_check(
        "lift_cos", -2.0, 2.0, [](const DualScalar& x) { return cos(x); },
        [](double a) { return std::cos(a); }, [](double a) { return -std::sin(a); });
    lift_check(
        "lift_tan", -1.2, 1.2, [](const DualScalar& x) { return tan(x); },
        [](double a) { return std::tan(a); },
        [](double a) {
            double t = std::tan(a);
            return 1.0 + t * t;
        });
    lift_check(
        "lift_sqrt", 0.1, 4.0, [](const DualScalar& x) { return sqrt(x); },
        [](double a) { return std::sqrt(a); },
        [](double a) { return 0.5 / std::sqrt(a); });
    lift_check(
        "lift_acos", -0.9, 0.9, [](const DualScalar& x) { return acos(x); },
        [](double a) { return std::acos(a); },
        [](double a) { return -1.0 / std::sqrt(1.0 - a * a); });

    {
        auto g = seeded("algebra.identities");
        std::uniform_real_distribution<double> dt(-1.2, 1.2), db(-2.0, 2.0), dq(0.1, 4.0),
            dc(-0.9, 0.9);
        std::vector<double> in(6 * n);
        for (int i = 0; i < n; ++i) {
            in[6 * i] = dt(g);
            in[6 * i + 1] = db(g);
            in[6 * i + 2] = dq(g);
            in[6 * i + 3] = db(g);
            in[6 * i + 4] = dc(g);
            in[6 * i + 5] = db(g);
        }
        std::vector<double> res(n);
        parallel_for_index(n, mode, [&](int i) {
            const double* p = &in[6 * i];
            DualScalar x{p[0], p[1]}, q{p[2], p[3]}, c{p[4], p[5]};
            double r = mag(sin(x) * sin(x) + cos(x) * cos(x) - DualScalar{1.0});
            r = std::max(r, rel_gap(tan(x), sin(x) / cos(x)));
            r = std::max(r, rel_gap(sqrt(q) * sqrt(q), q));
            r = std::max(r, rel_gap(cos(acos(c)), c));
            res[i] = r;
        });
        b.assertive("algebra", "", "lift_identities", n, reduce_max(res), 1e-12);
    }

    {
        auto g = seeded("algebra.angle");
        std::uniform_real_distribution<double> dp(0.1, std::acos(-1.0) - 0.1), ds(-2.0, 2.0);
        std::vector<double> in(2 * n);
        for (int i = 0; i < n; ++i) {
            in[2 * i] = dp(g);
            in[2 * i + 1] = ds(g);
        }
        std::vector<double> res(n);
        parallel_for_index(n, mode, [&](int i) {
            DualAngle a{in[2 * i], in[2 * i + 1]};
            DualAngle r = angle_from_cosine(cos_of(a));
            res[i] = std::max(std::abs(a.phi - r.phi), std::abs(a.phi_star - r.phi_star));
        });
        b.assertive("algebra", "", "angle_roundtrip", n, reduce_max(res), 1e-12);
    }
}

// ----------------------------------------------------------------- linear

void run_linear(Builder& b) {
    const int n = 10000;
    const ExecMode mode = b.opt.mode;
    const double pi = std::acos(-1.0);

    auto g = seeded("linear.vectors");
    std::uniform_real_distribution<double> d(-2.0, 2.0), dp(0.1, pi - 0.1), ds(-1.0, 1.0);
    auto real_away = [&](double* p) {
        for (;;) {
            p[0] = d(g);
            p[1] = d(g);
            p[2] = d(g);
            if (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] >= 0.04) return;
        }
    };
    // layout per sample: A(6) B(6) C(6) lambda(2) phi phi_star
    std::vector<double> in(22 * n);
    for (int i = 0; i < n; ++i) {
        double* p = &in[22 * i];
        real_away(p);
        for (int j = 3; j < 6; ++j) p[j] = d(g);
        for (;;) {
            real_away(p + 6);
            Vec3 ar{p[0], p[1], p[2]}, br{p[6], p[7], p[8]};
            if (norm(cross(ar, br)) >= 0.05) break;
        }
        for (int j = 9; j < 12; ++j) p[j] = d(g);
        real_away(p + 12);
        for (int j = 15; j < 18; ++j) p[j] = d(g);
        p[18] = d(g);
        p[19] = d(g);
        p[20] = dp(g);
        p[21] = ds(g);
    }

    struct Row {
        double nsq, lag, orth, anti, triple, unit, dist, angle;
    };
    std::vector<Row> rows(n);
    parallel_for_index(n, mode, [&](int i) {
        const double* p = &in[22 * i];
        DualVec3 A{{p[0], p[1], p[2]}, {p[3], p[4], p[5]}};
        DualVec3 B{{p[6], p[7], p[8]}, {p[9], p[10], p[11]}};
        DualVec3 C{{p[12], p[13], p[14]}, {p[15], p[16], p[17]}};
        DualScalar lam{p[18], p[19]};
        DualAngle F{p[20], p[21]};
        Row& r = rows[i];

        r.nsq = rel_gap(norm(A) * norm(A), dot(A, A));
        DualVec3 AB = cross(A, B);
        r.lag = rel_gap(dot(AB, AB) + dot(A, B) * dot(A, B), dot(A, A) * dot(B, B));
        r.orth = std::max(mag(dot(AB, A)), mag(dot(AB, B)));
        r.anti = vec_mag(AB + cross(B, A));
        r.triple = std::max(mag(det(A, B, C) - det(B, C, A)), mag(det(A, B, C) + det(A, C, B)));
        DualVec3 U = normalize(A);
        r.unit = mag(dot(U, U) - DualScalar{1.0});
        r.dist = vec_mag(smul(lam, A + B) - (smul(lam, A) + smul(lam, B)));

        DualVec3 Wv = normalize(AB);
        DualVec3 V = smul(cos_of(F), U) + smul(sin_of(F), Wv);
        DualAngle R = dual_angle(U, V);
        r.angle = std::max(std::abs(F.phi - R.phi), std::abs(F.phi_star - R.phi_star));
    });

    auto emit = [&](const char* name, auto&& get, double tol) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = get(rows[i]);
        b.assertive("linear", "", name, n, reduce_max(v), tol);
    };
    emit("norm_sq_selfdot", [](const Row& r) { return r.nsq; }, 1e-10);
    emit("lagrange_identity", [](const Row& r) { return r.lag; }, 1e-10);
    emit("cross_orthogonality", [](const Row& r) { return r.orth; }, 1e-10);
    emit("cross_antisymmetry", [](const Row& r) { return r.anti; }, 1e-10);
    emit("triple_product", [](const Row& r) { return r.triple; }, 1e-10);
    emit("normalize_unit", [](const Row& r) { return r.unit; }, 1e-10);
    emit("smul_distributes", [](const Row& r) { return r.dist; }, 1e-10);
    emit("vector_angle_roundtrip", [](const Row& r) { return r.angle; }, 1e-10);
}

// ------------------------------------------------------------------- jets

void run_jets(Builder& b, const CurveDef& c) {
    auto grid = interior_grid(c.lo, c.hi, b.opt.grid_n);
    const int n = static_cast<int>(grid.size());

    struct Row {
        double k[5] = {};
    };
    std::vector<Row> rows(n);
    parallel_for_index(n, b.opt.mode, [&](int i) {
        double s = grid[i];
        auto jets = eval_curve<4>(c, s);
        for (int k = 1; k <= 4; ++k) {
            DualVec3 fd = fd_oracle(c, s, k);
            rows[i].k[k] = vec_mag(at_order(jets, k) - fd) / (1.0 + vec_mag(fd));
        }
    });

    for (int k = 1; k <= 3; ++k) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = rows[i].k[k];
        b.assertive("jets", c.name, "fd_oracle_order" + std::to_string(k), n, reduce_max(v),
                    1e-6);
    }
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = rows[i].k[4];
    b.info("jets", c.name, "fd_oracle_order4", n, reduce_max(v), 1e-3,
           "wide stencil at fourth order");
}

// ----------------------------------------------------------------- frenet

void run_frenet(Builder& b, const CurveDef& c) {
    auto grid = interior_grid(c.lo, c.hi, b.opt.grid_n);
    const int n = static_cast<int>(grid.size());
    bool unit = unit_speed_deviation(c, grid) <= 1e-9;
    bool pinned = c.name == "helix_3_4";

    struct Row {
        double frame, darboux, ortho, angle, rates, unit, pinned;
    };
    std::vector<Row> rows(n);
    parallel_for_index(n, b.opt.mode, [&](int i) {
        double s = grid[i];
        Row& r = rows[i];
        FrenetApparatus app = frenet_at(c, s);

        FrameFieldResiduals fe = frenet_residuals(c, s);
        r.frame = std::max({vec_mag(fe.t_eq), vec_mag(fe.n_eq), vec_mag(fe.b_eq)});
        FrameFieldResiduals de = darboux_residuals(c, s);
        r.darboux = std::max({vec_mag(de.t_eq), vec_mag(de.n_eq), vec_mag(de.b_eq)});

        r.ortho = std::max(orthonormality_deviation(app),
                           mag(det(app.T, app.N, app.B) - DualScalar{1.0}));

        DualAngle phi = darboux_angle(app);
        DualVec3 cd = unit_darboux(app);
        double a1 = mag(cos_of(phi) - dot(cd, app.B));
        double a2 = mag(sin_of(phi) * app.kappa - cos_of(phi) * app.tau) / (1.0 + mag(app.tau));
        double a3 = mag(sin_of(phi) * sin_of(phi) + cos_of(phi) * cos_of(phi) - DualScalar{1.0});
        r.angle = std::max({a1, a2, a3});

        DualScalar kfd = fd_derivative<DualScalar>(
            [&](double t) { return frenet_at(c, t).kappa; }, s, 1, fd_default_step(1, s));
        DualScalar tfd = fd_derivative<DualScalar>(
            [&](double t) { return frenet_at(c, t).tau; }, s, 1, fd_default_step(1, s));
        r.rates = std::max(mag(*app.kappa_prime - kfd) / (1.0 + mag(kfd)),
                           mag(*app.tau_prime - tfd) / (1.0 + mag(tfd)));

        r.unit = 0.0;
        if (unit) {
            FrenetApparatus ua = frenet_unit_at(c, s);
            r.unit = std::max({vec_mag(ua.T - app.T), vec_mag(ua.N - app.N),
                               vec_mag(ua.B - app.B), vec_mag(ua.W - app.W),
                               mag(ua.kappa - app.kappa), mag(ua.tau - app.tau),
                               rel_gap(*ua.kappa_prime, *app.kappa_prime),
                               rel_gap(*ua.tau_prime, *app.tau_prime)});
        }

        r.pinned = 0.0;
        if (pinned)
            r.pinned = std::max({std::abs(app.kappa.real - 0.12), std::abs(app.kappa.dual),
                                 std::abs(app.tau.real - 0.16), std::abs(app.tau.dual)});
    });

    auto emit = [&](const char* name, auto&& get, double tol) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = get(rows[i]);
        b.assertive("frenet", c.name, name, n, reduce_max(v), tol);
    };
    emit("frame_equations", [](const Row& r) { return r.frame; }, 1e-6);
    emit("darboux_property", [](const Row& r) { return r.darboux; }, 1e-6);
    emit("orthonormality", [](const Row& r) { return r.ortho; }, 1e-9);
    emit("angle_identities", [](const Row& r) { return r.angle; }, 1e-10);
    emit("curvature_rates_fd", [](const Row& r) { return r.rates; }, 1e-6);
    if (unit)
        emit("unit_speed_agreement", [](const Row& r) { return r.unit; }, 1e-10);
    else
        b.skipped("frenet", c.name, "unit_speed_agreement", "skipped (not unit speed)");
    if (pinned) emit("pinned_constants", [](const Row& r) { return r.pinned; }, 1e-10);
}

// --------------------------------------------------------------- involute

void run_involute(Builder& b, const CurveDef& c) {
    auto base = interior_grid(c.lo, c.hi, b.opt.grid_n);
    if (unit_speed_deviation(c, base) > 1e-9) {
        b.skipped("involute", c.name, "unit_speed_gate", "skipped (evolute not unit speed)");
        return;
    }

    for (double c2 : b.opt.c2_values) {
        InvolutePair P{c, b.opt.c1, c2};
        auto grid = involute_grid(c, b.opt.c1, b.opt.grid_n);
        const int n = static_cast<int>(grid.size());

        struct Row {
            double tangency, frame, kappa, tau, dist, rate, tdir, assembly, direction;
        };
        std::vector<Row> rows(n);
        parallel_for_index(n, b.opt.mode, [&](int i) {
            double s = grid[i];
            Row& r = rows[i];
            FrenetApparatus evo = frenet_at(c, s);
            DualScalar lam = involute_lambda(P, s);
            FrenetApparatus dir = involute_apparatus_direct(P, s);
            InvoluteFrame pred = involute_frame_predicted(evo);
            DualScalar kf = involute_kappa(evo, lam);
            DualScalar tf = involute_tau(evo, lam);
            DualVec3 wf = involute_darboux(evo, lam);
            DualVec3 cf = involute_darboux_direction(evo);
            DualScalar rate = involute_arc_rate(evo, lam);
            DualVec3 bp = at_order(involute_jets(P, s), 1);

            r.tangency = mag(dot(evo.T, dir.T));
            r.frame = std::max({vec_mag(pred.T - dir.T), vec_mag(pred.N - dir.N),
                                vec_mag(pred.B - dir.B)});
            r.kappa = rel_gap(kf, dir.kappa);
            r.tau = rel_gap(tf, dir.tau);
            DualScalar d1 = involute_distance(P, s);
            DualScalar d2 = norm(involute_point(P, s) - position(c, s));
            r.dist = std::max(mag(d1 - d2), mag(d1 - DualScalar{b.opt.c1 - s, c2}));
            r.rate = rel_gap(rate, dir.speed);
            r.tdir = vec_mag(normalize(bp) - evo.N);
            DualVec3 assembled = smul(dir.tau, dir.T) + smul(dir.kappa, dir.B);
            r.assembly = std::max(rel_gap(wf, assembled), rel_gap(wf, dir.W));
            r.direction = std::max(mag(dot(cf, cf) - DualScalar{1.0}), vec_mag(cf - normalize(wf)));
        });

        auto emit = [&](const char* name, auto&& get, double tol) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = get(rows[i]);
            b.assertive("involute", c.name, with_c2(name, c2), n, reduce_max(v), tol);
        };
        emit("tangency", [](const Row& r) { return r.tangency; }, 1e-9);
        emit("frame_theorem", [](const Row& r) { return r.frame; }, 1e-8);
        emit("curvature_formula", [](const Row& r) { return r.kappa; }, 1e-8);
        emit("torsion_formula", [](const Row& r) { return r.tau; }, 1e-8);
        emit("distance", [](const Row& r) { return r.dist; }, 1e-12);
        emit("arc_rate", [](const Row& r) { return r.rate; }, 1e-10);
        emit("tangent_direction", [](const Row& r) { return r.tdir; }, 1e-9);
        emit("darboux_assembly", [](const Row& r) { return r.assembly; }, 1e-8);
        emit("darboux_direction", [](const Row& r) { return r.direction; }, 1e-9);

        // the moving-frame property of the involute, against differenced frames
        auto small = involute_grid(c, b.opt.c1, 8);
        const int m = static_cast<int>(small.size());
        std::vector<double> dres(m);
        parallel_for_index(m, b.opt.mode, [&](int i) {
            double s = small[i];
            FrenetApparatus dir = involute_apparatus_direct(P, s);
            DualScalar rate = involute_arc_rate(frenet_at(c, s), involute_lambda(P, s));
            double h = fd_default_step(1, s);
            double worst = 0.0;
            auto probe = [&](auto&& field, const DualVec3& x) {
                DualVec3 got = fd_derivative<DualVec3>(field, s, 1, h);
                DualVec3 want = smul(rate, cross(dir.W, x));
                worst = std::max(worst, vec_mag(got - want) / (1.0 + vec_mag(got)));
            };
            probe([&](double t) { return involute_apparatus_direct(P, t).T; }, dir.T);
            probe([&](double t) { return involute_apparatus_direct(P, t).N; }, dir.N);
            probe([&](double t) { return involute_apparatus_direct(P, t).B; }, dir.B);
            dres[i] = worst;
        });
        b.assertive("involute", c.name, with_c2("darboux_property", c2), m, reduce_max(dres),
                    1e-6);
    }
}

// ------------------------------------------------------------------ helix

void run_helix(Builder& b, const CurveDef& c) {
    auto grid = interior_grid(c.lo, c.hi, b.opt.grid_n);
    const int n = static_cast<int>(grid.size());
    double dev = helix_deviation(c, grid);
    bool hel = dev <= 1e-9;
    b.info("helix", c.name, "detection", n, dev, 1e-9, hel ? "helix" : "not a helix");

    if (hel) {
        double tz = 0.0, axis = 0.0, par = 0.0;
        int total = 0;
        for (double c2 : b.opt.c2_values) {
            auto igrid = involute_grid(c, b.opt.c1, b.opt.grid_n);
            const int m = static_cast<int>(igrid.size());
            total += m;
            struct Row {
                double tz, axis, par;
            };
            std::vector<Row> rows(m);
            parallel_for_index(m, b.opt.mode, [&](int i) {
                double s = igrid[i];
                FrenetApparatus evo = frenet_at(c, s);
                DualScalar lam{b.opt.c1 - s, c2};
                rows[i].tz = mag(involute_tau(evo, lam));
                rows[i].axis = vec_mag(unit_darboux(evo) - involute_darboux_direction(evo));
                rows[i].par = vec_mag(cross(normalize(involute_darboux(evo, lam)),
                                            involute_frame_predicted(evo).B));
            });
            for (const Row& r : rows) {
                tz = std::max(tz, r.tz);
                axis = std::max(axis, r.axis);
                par = std::max(par, r.par);
            }
        }
        b.assertive("helix", c.name, "involute_torsion_zero", total, tz, 1e-10);
        b.assertive("helix", c.name, "axis_shared", total, axis, 1e-9);
        b.assertive("helix", c.name, "darboux_parallel_binormal", total, par, 1e-9);
        return;
    }

    b.skipped("helix", c.name, "involute_torsion_zero", "skipped (not a helix)");
    b.skipped("helix", c.name, "axis_shared", "skipped (not a helix)");
    b.skipped("helix", c.name, "darboux_parallel_binormal", "skipped (not a helix)");

    if (dev > 1e-2) {
        // a decisively non-helix evolute must produce twisting involutes; the
        // torsion magnitude takes both slots, since the real part alone can
        // vanish on a curve that is a helix only up to its dual part
        double c2 = b.opt.c2_values.empty() ? 0.0 : b.opt.c2_values.front();
        auto igrid = involute_grid(c, b.opt.c1, b.opt.grid_n);
        const int m = static_cast<int>(igrid.size());
        std::vector<double> tv(m);
        parallel_for_index(m, b.opt.mode, [&](int i) {
            FrenetApparatus evo = frenet_at(c, igrid[i]);
            tv[i] = mag(involute_tau(evo, DualScalar{b.opt.c1 - igrid[i], c2}));
        });
        b.exceeds("helix", c.name, "discrimination", m, median_of(tv), 1e-3,
                  "pass requires the median to exceed the tolerance");
    } else {
        b.info("helix", c.name, "discrimination", n, dev, 1e-2,
               "inconclusive (deviation between the helix and non-helix bands)");
    }
}

// ------------------------------------------------------------- crosscheck
//
// Every commonly printed split expansion of the involute identities, measured
// against the dual-arithmetic evaluation. Rows marked informational record
// the deviation of forms whose printed version is algebraically inconsistent;
// assertive rows must agree to rounding.

struct XRow {
    double frame_real, frame_dual;
    double sin_disp, sin_eps_disp, cos_disp, cos_eps_disp, corrected;
    double k1_real, k1_dual, k2_real, k2_dual;
    double w_real, w_dual;
    double alt_full, alt_real, alt_dual;
    double dir_corrected, dir_real_disp;
    double ang_cos, ang_sin_disp, ang_sin_eps_disp, ang_cos_eps_disp;
};

double sc(double printed, double truth) {
    return std::abs(printed - truth) / (1.0 + std::abs(truth));
}

double scv(const Vec3& printed, const Vec3& truth) {
    return norm(printed - truth) / (1.0 + norm(truth));
}

XRow crosscheck_point(const CurveDef& c, const InvolutePair& P, double s) {
    XRow r{};
    FrenetApparatus evo = frenet_at(c, s);
    SplitApparatus sp = split(evo);
    DualAngle phi = darboux_angle(evo);
    DualScalar phid = darboux_rotation_rate(evo);
    DualScalar lam = involute_lambda(P, s);
    double mu = lam.real, mus = lam.dual;
    double k1 = sp.k1, k2 = sp.k2, k1s = sp.k1_star, k2s = sp.k2_star;
    DualScalar kp = *evo.kappa_prime, tp = *evo.tau_prime;
    double q = k1 * k1 + k2 * k2;
    double rt = std::sqrt(q);
    double sf = std::sin(phi.phi), cf = std::cos(phi.phi);

    InvoluteFrame pred = involute_frame_predicted(evo);
    DualScalar kbar = involute_kappa(evo, lam);
    DualScalar tbar = involute_tau(evo, lam);
    DualVec3 wbar = involute_darboux(evo, lam);
    DualVec3 cbar = involute_darboux_direction(evo);
    DualVec3 cdir = unit_darboux(evo);
    DualScalar sphi = sin_of(phi), cphi = cos_of(phi);

    // frame split, real and dual rows
    Vec3 tb_r = sp.n;
    Vec3 nb_r = -cf * sp.t + sf * sp.b;
    Vec3 bb_r = sf * sp.t + cf * sp.b;
    r.frame_real = std::max({scv(tb_r, pred.T.real), scv(nb_r, pred.N.real),
                             scv(bb_r, pred.B.real)});
    Vec3 tb_d = sp.n_star;
    Vec3 nb_d = -cf * sp.t_star + sf * sp.b_star + phi.phi_star * (sf * sp.t + cf * sp.b);
    Vec3 bb_d = sf * sp.t_star + cf * sp.b_star + phi.phi_star * (cf * sp.t - sf * sp.b);
    r.frame_dual = std::max({scv(tb_d, pred.T.dual), scv(nb_d, pred.N.dual),
                             scv(bb_d, pred.B.dual)});

    // angle splits as printed (denominator missing its square root), then the
    // rooted forms
    r.sin_disp = sc(k2 / q, sphi.real);
    r.cos_disp = sc(k1 / q, cphi.real);
    double eps_den = phi.phi * q * q;
    r.sin_eps_disp =
        eps_den == 0.0
            ? kNaN
            : sc((k1 * k1 + k2s - 2 * k1 * k2 * k1s - 2 * k2 * k2 * k2s) / eps_den, sphi.dual);
    r.cos_eps_disp =
        eps_den == 0.0
            ? kNaN
            : sc((2 * k1 * k1 + k1s + 2 * k1 * k2 * k2s - k1 * k1 * k1s - k2 * k2 * k1s) /
                     eps_den,
                 cphi.dual);
    double rt3 = rt * rt * rt;
    r.corrected = std::max({sc(k2 / rt, sphi.real), sc(k1 / rt, cphi.real),
                            sc(k1 * (k2s * k1 - k2 * k1s) / rt3, sphi.dual),
                            sc(k2 * (k1s * k2 - k1 * k2s) / rt3, cphi.dual)});

    // curvature splits
    r.k1_real = sc(rt / (mu * k1), kbar.real);
    double k1bar_eps = ((mu * mu * k1 * k1) * (2 * k1 * k1s + 2 * k2 * k2s) -
                        (2 * k1 * k1s * mu * mu) * q) /
                       (2 * mu * mu * mu * k1 * k1 * k1 * rt);
    r.k1_dual = sc(k1bar_eps, kbar.dual);
    double Pn = k1 * tp.real - k2 * kp.real;
    r.k2_real = sc(Pn / (mu * k1 * q), tbar.real);
    double Ps = k1 * tp.dual + tp.real * k1s - kp.real * k2s - k2 * kp.dual;
    double Q = mu * k1 * q;
    double Qs = 2 * (k1 * k1s + k2 * k2s) * k1 * mu + q * (k1s * mu + k1 * mus);
    r.k2_dual = sc((Ps * Q - Pn * Qs) / (Q * Q), tbar.dual);

    // darboux vector split; the printed dual row has the real normal where its
    // dual slot belongs
    Vec3 w_num = sp.w + phid.real * sp.n;
    r.w_real = scv(w_num / (mu * k1), wbar.real);
    Vec3 w_eps = (mu * k1 * (sp.w_star + phid.real * sp.n + phid.dual * sp.n) -
                  (mu * k1s + mus * k1) * w_num) /
                 (mu * mu * k1 * k1);
    r.w_dual = scv(w_eps, wbar.dual);

    // the full dual equation for the involute darboux vector, and its printed
    // split which omits the normal term
    DualScalar ksq = evo.kappa * evo.kappa + evo.tau * evo.tau;
    DualVec3 walt = smul((evo.kappa * tp - kp * evo.tau) / (evo.kappa * lam * ksq), evo.N) +
                    smul(sqrt(ksq) / (evo.kappa * lam),
                         smul(sphi, evo.T) + smul(cphi, evo.B));
    r.alt_full = rel_gap(walt, wbar);
    Vec3 alt_r = rt / (mu * k1) * (sf * sp.t + cf * sp.b);
    r.alt_real = scv(alt_r, wbar.real);
    Vec3 alt_d =
        rt / (mu * k1) *
            (sf * sp.t_star + cf * sp.b_star + phi.phi_star * (cf * sp.t - sf * sp.b)) +
        (mu * k1 * (k1 * k1s + k2 * k2s) - q * (mu * k1s + mus * k1)) /
            (rt * mu * mu * k1 * k1) * (sf * sp.t + cf * sp.b);
    r.alt_dual = scv(alt_d, wbar.dual);

    // darboux direction split; printed radicand carries the rotation rate to
    // the first power
    double rad_sq = phid.real * phid.real + q;
    Vec3 dir_num = phid.real * sp.n + rt * cdir.real;
    r.dir_corrected = scv(dir_num / std::sqrt(rad_sq), cbar.real);
    double rad_lin = phid.real + q;
    r.dir_real_disp = rad_lin <= 0.0 ? kNaN : scv(dir_num / std::sqrt(rad_lin), cbar.real);

    // involute darboux angle against the split displays
    DualScalar wn = sqrt(kbar * kbar + tbar * tbar);
    DualScalar sinb = tbar / wn, cosb = kbar / wn;
    double phibs = std::abs(cosb.real) >= std::abs(sinb.real) ? sinb.dual / cosb.real
                                                              : -cosb.dual / sinb.real;
    r.ang_cos = sc(std::sqrt(q / rad_sq), cosb.real);
    r.ang_sin_disp = rad_lin <= 0.0 ? kNaN : sc(phid.real / std::sqrt(rad_lin), sinb.real);
    double den32 = phibs * std::pow(rad_sq, 1.5);
    if (den32 == 0.0 || std::isnan(den32)) {
        r.ang_sin_eps_disp = kNaN;
        r.ang_cos_eps_disp = kNaN;
    } else {
        double an = rad_sq * phid.dual - phid.real * phi.phi_star + k1 * k1s +
                    k2 * k2s * phid.real;
        r.ang_sin_eps_disp = sc(an / den32, sinb.dual);
        double bn = (phid.real * phid.dual + k1 * k1s + k2 * k2s) * rt -
                    rad_sq * (k1 * k1s + k2 * k2s);
        r.ang_cos_eps_disp = sc(bn / (den32 * rt), cosb.dual);
    }
    return r;
}

void run_crosscheck(Builder& b, const CurveDef& c) {
    auto base = interior_grid(c.lo, c.hi, b.opt.grid_n);
    if (unit_speed_deviation(c, base) > 1e-9) {
        b.skipped("crosscheck", c.name, "unit_speed_gate", "skipped (evolute not unit speed)");
        return;
    }

    for (double c2 : b.opt.c2_values) {
        InvolutePair P{c, b.opt.c1, c2};
        auto grid = involute_grid(c, b.opt.c1, b.opt.grid_n);
        const int n = static_cast<int>(grid.size());
        std::vector<XRow> rows(n);
        parallel_for_index(n, b.opt.mode,
                           [&](int i) { rows[i] = crosscheck_point(c, P, grid[i]); });

        auto assert_row = [&](const char* name, auto&& get, double tol) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i) v[i] = get(rows[i]);
            b.assertive("crosscheck", c.name, with_c2(name, c2), n, reduce_max(v), tol);
        };
        auto info_row = [&](const char* name, auto&& get, double tol, std::string note) {
            Acc a;
            for (int i = 0; i < n; ++i) a.add(get(rows[i]));
            b.info("crosscheck", c.name, with_c2(name, c2), n, a.value(n), tol,
                   a.note(n, std::move(note)));
        };

        assert_row("frame_split_real", [](const XRow& r) { return r.frame_real; }, 1e-9);
        assert_row("frame_split_dual", [](const XRow& r) { return r.frame_dual; }, 1e-9);

        info_row("angle_sin_display", [](const XRow& r) { return r.sin_disp; }, 1e-9,
                 "printed denominator misses its square root");
        info_row("angle_sin_eps_display", [](const XRow& r) { return r.sin_eps_disp; }, 1e-9,
                 "printed dual row divides by the angle");
        info_row("angle_cos_display", [](const XRow& r) { return r.cos_disp; }, 1e-9,
                 "printed denominator misses its square root");
        info_row("angle_cos_eps_display", [](const XRow& r) { return r.cos_eps_disp; }, 1e-9,
                 "printed dual row divides by the angle");
        assert_row("angle_splits_corrected", [](const XRow& r) { return r.corrected; }, 1e-10);

        assert_row("curvature_split_real", [](const XRow& r) { return r.k1_real; }, 1e-9);
        if (c2 == 0.0)
            assert_row("curvature_split_dual", [](const XRow& r) { return r.k1_dual; }, 1e-9);
        else
            info_row("curvature_split_dual", [](const XRow& r) { return r.k1_dual; }, 1e-9,
                     "printed split drops the dual part of the offset factor");
        assert_row("torsion_split_real", [](const XRow& r) { return r.k2_real; }, 1e-9);
        assert_row("torsion_split_dual", [](const XRow& r) { return r.k2_dual; }, 1e-9);

        assert_row("darboux_split_real", [](const XRow& r) { return r.w_real; }, 1e-9);
        info_row("darboux_split_dual", [](const XRow& r) { return r.w_dual; }, 1e-9,
                 "printed dual row uses the real normal where its dual slot belongs");

        assert_row("darboux_alt_dual_form", [](const XRow& r) { return r.alt_full; }, 1e-9);
        info_row("darboux_alt_split_real", [](const XRow& r) { return r.alt_real; }, 1e-9,
                 "printed split omits the normal term");
        info_row("darboux_alt_split_dual", [](const XRow& r) { return r.alt_dual; }, 1e-9,
                 "printed split omits the normal term");

        assert_row("direction_split_corrected", [](const XRow& r) { return r.dir_corrected; },
                   1e-9);
        info_row("direction_split_real_display", [](const XRow& r) { return r.dir_real_disp; },
                 1e-9, "printed radicand carries the rotation rate unsquared");
        b.info("crosscheck", c.name, with_c2("direction_split_dual_display", c2), n, kNaN, 0.0,
               "not evaluable as printed (product of two vectors); nan at all points");

        assert_row("involute_angle_cos", [](const XRow& r) { return r.ang_cos; }, 1e-9);
        info_row("involute_angle_sin_display", [](const XRow& r) { return r.ang_sin_disp; },
                 1e-9, "printed radicand carries the rotation rate unsquared");
        info_row("involute_angle_sin_eps_display",
                 [](const XRow& r) { return r.ang_sin_eps_disp; }, 1e-9,
                 "printed dual row divides by the recovered angle slot");
        info_row("involute_angle_cos_eps_display",
                 [](const XRow& r) { return r.ang_cos_eps_disp; }, 1e-9,
                 "printed dual row divides by the recovered angle slot");
    }
}

}  // namespace

VerificationReport run_verification(const VerifyOptions& opt_in) {
    VerifyOptions opt = opt_in;
    for (const auto& s : opt.suites) {
        if (s == "all") continue;
        const auto& known = verify_suites();
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw Error("unknown verification suite '" + s + "'");
    }
    if (opt.grid_n < 2) throw Error("grid size must be at least 2");
    if (opt.tol && !(*opt.tol > 0.0)) throw Error("tolerance must be positive");
    if (opt.c2_values.empty()) opt.c2_values.push_back(0.0);

    Builder b{opt, {}};
    const std::vector<CurveDef>& curves = opt.curves.empty() ? catalog() : opt.curves;

    if (wants(opt, "algebra")) run_algebra(b);
    if (wants(opt, "linear")) run_linear(b);
    if (wants(opt, "jets"))
        for (const auto& c : curves) run_jets(b, c);
    if (wants(opt, "frenet"))
        for (const auto& c : curves) run_frenet(b, c);
    if (wants(opt, "involute"))
        for (const auto& c : curves) run_involute(b, c);
    if (wants(opt, "helix"))
        for (const auto& c : curves) run_helix(b, c);
    if (wants(opt, "crosscheck"))
        for (const auto& c : curves) run_crosscheck(b, c);

    return {std::move(b.rows)};
}

}  // namespace dcurve
