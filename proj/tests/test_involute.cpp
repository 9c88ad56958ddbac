#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dcurve/curve.hpp"
#include "dcurve/frenet.hpp"
#include "dcurve/involute.hpp"
#include "dcurve/oracle.hpp"
#include "plane_fit.hpp"

using namespace dcurve;

namespace {

const std::vector<std::string> kEligible = {
    "circle",          "circle_dual", "helix_3_4", "helix_3_4_screw",
    "helix_3_4_ruled", "wave",        "wave_dual",
};

// dual helices among the unit-speed evolutes, used for the flat-involute checks
const std::vector<std::string> kHelices = {"circle", "circle_dual", "helix_3_4",
                                           "helix_3_4_screw"};

// full detection set; helix_3_4_dual is a screw helix too, just not unit speed
const std::vector<std::string> kDetected = {"circle", "circle_dual", "helix_3_4",
                                            "helix_3_4_dual", "helix_3_4_screw"};

std::vector<double> pair_grid(const InvolutePair& p, int n = 25) {
    return interior_grid(p.evolute.lo, std::min(p.evolute.hi, p.c1 - 1e-3), n);
}

}  // namespace

TEST_CASE("involute point of the helix by hand") {
    InvolutePair plain{builtin("helix_3_4"), 10.0, 0.0};
    DualVec3 b0 = involute_point(plain, 0.0);
    CHECK(vec_mag(b0 - DualVec3{{3, 6, 8}, {0, 0, 0}}) <= 1e-14);

    InvolutePair offset{builtin("helix_3_4"), 10.0, 3.0};
    DualVec3 b3 = involute_point(offset, 0.0);
    CHECK(vec_mag(b3 - DualVec3{{3, 6, 8}, {0, 1.8, 2.4}}) <= 1e-14);
}

TEST_CASE("involute distance closed form") {
    InvolutePair p{builtin("helix_3_4"), 10.0, 3.0};
    DualScalar d = involute_distance(p, 4.0);
    CHECK(d.real == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(d.dual == doctest::Approx(3.0).epsilon(1e-14));

    InvolutePair real_only{builtin("helix_3_4"), 10.0, 0.0};
    DualScalar d0 = involute_distance(real_only, 4.0);
    CHECK(d0.real == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(d0.dual == 0.0);

    // independent cross-check against the actual point separation
    for (const auto& name : kEligible) {
        InvolutePair q{builtin(name), 10.0, 0.5};
        for (double s : pair_grid(q, 10)) {
            DualScalar direct = norm(involute_point(q, s) - position(q.evolute, s));
            CHECK(mag(direct - involute_distance(q, s)) <= 1e-12);
        }
    }
}

TEST_CASE("involute curvatures of the helix by hand") {
    InvolutePair p{builtin("helix_3_4"), 10.0, 3.0};
    FrenetApparatus a = frenet_at(p.evolute, 5.0);
    DualScalar lambda = involute_lambda(p, 5.0);

    DualScalar rate = involute_arc_rate(a, lambda);
    CHECK(rate.real == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(rate.dual == doctest::Approx(0.36).epsilon(1e-14));

    DualScalar kb = involute_kappa(a, lambda);
    CHECK(kb.real == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(kb.dual == doctest::Approx(-0.2).epsilon(1e-13));

    DualScalar tb = involute_tau(a, lambda);
    CHECK(mag(tb) <= 1e-12);

    // kappa_bar = 5/(3 mu) for the real pair
    InvolutePair real_only{builtin("helix_3_4"), 10.0, 0.0};
    for (double s : pair_grid(real_only, 10)) {
        FrenetApparatus as = frenet_at(real_only.evolute, s);
        DualScalar ks = involute_kappa(as, involute_lambda(real_only, s));
        CHECK(ks.real == doctest::Approx(5.0 / (3.0 * (10.0 - s))).epsilon(1e-12));
        CHECK(std::abs(ks.dual) <= 1e-12);
    }
}

TEST_CASE("involute frame of the helix by hand") {
    InvolutePair p{builtin("helix_3_4"), 10.0, 0.0};
    InvoluteFrame f = involute_frame_predicted(frenet_at(p.evolute, 0.0));
    CHECK(vec_mag(f.T - DualVec3{{-1, 0, 0}, {0, 0, 0}}) <= 1e-14);
    CHECK(vec_mag(f.N - DualVec3{{0, -1, 0}, {0, 0, 0}}) <= 1e-14);
    CHECK(vec_mag(f.B - DualVec3{{0, 0, 1}, {0, 0, 0}}) <= 1e-14);
}

TEST_CASE("planar evolute collapses the angle") {
    // tau = 0 means phi = 0, so N_bar = -T and B_bar = B
    const auto& c = builtin("circle");
    for (double s : interior_grid(c.lo, c.hi, 8)) {
        FrenetApparatus a = frenet_at(c, s);
        InvoluteFrame f = involute_frame_predicted(a);
        CHECK(vec_mag(f.T - a.N) <= 1e-12);
        CHECK(vec_mag(f.N + a.T) <= 1e-12);
        CHECK(vec_mag(f.B - a.B) <= 1e-12);
    }
}

TEST_CASE("tangency of evolute and involute tangents") {
    for (const auto& name : kEligible) {
        CAPTURE(name);
        for (double c2 : {0.0, 0.5}) {
            InvolutePair p{builtin(name), 10.0, c2};
            for (double s : pair_grid(p)) {
                FrenetApparatus evo = frenet_at(p.evolute, s);
                FrenetApparatus inv = involute_apparatus_direct(p, s);
                CHECK(mag(dot(evo.T, inv.T)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("predicted frame equals the directly computed frame") {
    for (const auto& name : kEligible) {
        CAPTURE(name);
        for (double c2 : {0.0, 0.5}) {
            InvolutePair p{builtin(name), 10.0, c2};
            for (double s : pair_grid(p)) {
                FrenetApparatus evo = frenet_at(p.evolute, s);
                FrenetApparatus inv = involute_apparatus_direct(p, s);
                InvoluteFrame f = involute_frame_predicted(evo);
                CHECK(vec_mag(f.T - inv.T) <= 1e-8);
                CHECK(vec_mag(f.N - inv.N) <= 1e-8);
                CHECK(vec_mag(f.B - inv.B) <= 1e-8);
            }
        }
    }
}

TEST_CASE("formula curvatures equal the directly computed ones") {
    for (const auto& name : kEligible) {
        CAPTURE(name);
        for (double c2 : {0.0, 0.5}) {
            InvolutePair p{builtin(name), 10.0, c2};
            for (double s : pair_grid(p)) {
                FrenetApparatus evo = frenet_at(p.evolute, s);
                FrenetApparatus inv = involute_apparatus_direct(p, s);
                DualScalar lambda = involute_lambda(p, s);
                CHECK(rel_gap(involute_kappa(evo, lambda), inv.kappa) <= 1e-8);
                CHECK(rel_gap(involute_tau(evo, lambda), inv.tau) <= 1e-8);
            }
        }
    }
}

TEST_CASE("involute arc rate equals the speed of beta") {
    for (const auto& name : kEligible) {
        CAPTURE(name);
        for (double c2 : {0.0, 0.5}) {
            InvolutePair p{builtin(name), 10.0, c2};
            for (double s : pair_grid(p, 12)) {
                FrenetApparatus evo = frenet_at(p.evolute, s);
                DualScalar rate = involute_arc_rate(evo, involute_lambda(p, s));
                DualScalar speed = norm(at_order(involute_jets(p, s), 1));
                CHECK(mag(rate - speed) <= 1e-10 * (1.0 + mag(rate)));
            }
        }
    }
}

TEST_CASE("beta' is coincident with the evolute normal") {
    for (const auto& name : kEligible) {
        CAPTURE(name);
        InvolutePair p{builtin(name), 10.0, 0.5};
        for (double s : pair_grid(p, 12)) {
            FrenetApparatus evo = frenet_at(p.evolute, s);
            DualVec3 dir = normalize(at_order(involute_jets(p, s), 1));
            CHECK(vec_mag(dir - evo.N) <= 1e-9);
        }
    }
}

TEST_CASE("darboux vector of the involute, formula vs assembly vs direct") {
    for (const auto& name : kEligible) {
        CAPTURE(name);
        for (double c2 : {0.0, 0.5}) {
            InvolutePair p{builtin(name), 10.0, c2};
            for (double s : pair_grid(p)) {
                FrenetApparatus evo = frenet_at(p.evolute, s);
                FrenetApparatus inv = involute_apparatus_direct(p, s);
                DualScalar lambda = involute_lambda(p, s);
                DualVec3 w_formula = involute_darboux(evo, lambda);
                DualVec3 w_direct = smul(inv.tau, inv.T) + smul(inv.kappa, inv.B);
                double scale = 1.0 + vec_mag(w_formula);
                CHECK(vec_mag(w_formula - w_direct) <= 1e-8 * scale);
                CHECK(vec_mag(w_formula - inv.W) <= 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("darboux property of the involute frame, rate-scaled") {
    // d/ds of beta's frame equals (ds_bar/ds) W_bar ^ X
    for (const auto& name : {"helix_3_4", "wave_dual"}) {
        CAPTURE(name);
        InvolutePair p{builtin(name), 10.0, 0.5};
        auto t_field = [&](double u) { return involute_apparatus_direct(p, u).T; };
        auto n_field = [&](double u) { return involute_apparatus_direct(p, u).N; };
        auto b_field = [&](double u) { return involute_apparatus_direct(p, u).B; };
        for (double s : pair_grid(p, 8)) {
            FrenetApparatus evo = frenet_at(p.evolute, s);
            FrenetApparatus inv = involute_apparatus_direct(p, s);
            DualScalar rate = involute_arc_rate(evo, involute_lambda(p, s));
            double h = fd_default_step(1, s);
            DualVec3 dt = fd_derivative<DualVec3>(t_field, s, 1, h);
            DualVec3 dn = fd_derivative<DualVec3>(n_field, s, 1, h);
            DualVec3 db = fd_derivative<DualVec3>(b_field, s, 1, h);
            CHECK(vec_mag(dt - smul(rate, cross(inv.W, inv.T))) <= 1e-6);
            CHECK(vec_mag(dn - smul(rate, cross(inv.W, inv.N))) <= 1e-6);
            CHECK(vec_mag(db - smul(rate, cross(inv.W, inv.B))) <= 1e-6);
        }
    }
}

TEST_CASE("unit darboux direction of the involute") {
    for (const auto& name : kEligible) {
        CAPTURE(name);
        for (double c2 : {0.0, 0.5}) {
            InvolutePair p{builtin(name), 10.0, c2};
            for (double s : pair_grid(p)) {
                FrenetApparatus evo = frenet_at(p.evolute, s);
                DualVec3 c_bar = involute_darboux_direction(evo);
                CHECK(mag(norm(c_bar) - DualScalar{1.0, 0.0}) <= 1e-10);
                DualVec3 w_bar = involute_darboux(evo, involute_lambda(p, s));
                CHECK(vec_mag(c_bar - normalize(w_bar)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("helix evolutes give planar involutes with a shared axis") {
    for (const auto& name : kHelices) {
        CAPTURE(name);
        for (double c2 : {0.0, 0.5}) {
            InvolutePair p{builtin(name), 10.0, c2};
            for (double s : pair_grid(p)) {
                FrenetApparatus evo = frenet_at(p.evolute, s);
                FrenetApparatus inv = involute_apparatus_direct(p, s);
                CHECK(mag(inv.tau) <= 1e-10);
                DualVec3 c_evolute = unit_darboux(evo);
                DualVec3 c_bar = involute_darboux_direction(evo);
                CHECK(vec_mag(c_evolute - c_bar) <= 1e-9);
                CHECK(vec_mag(cross(normalize(inv.W), inv.B)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("non-helix evolute is flagged by nonzero involute torsion") {
    InvolutePair p{builtin("twisted_cubic"), 10.0, 0.0};
    auto grid = pair_grid(p, 50);
    int above = 0;
    double peak = 0.0;
    for (double s : grid) {
        FrenetApparatus evo = frenet_at(p.evolute, s);
        DualScalar tb = involute_tau(evo, involute_lambda(p, s));
        if (std::abs(tb.real) > 1e-3) ++above;
        peak = std::max(peak, std::abs(tb.real));
    }
    CHECK(above >= 25);
    CHECK(peak > 0.1);
}

TEST_CASE("helix involutes are planar point sets") {
    InvolutePair p{builtin("helix_3_4"), 10.0, 0.0};
    std::vector<Vec3> pts;
    for (double s : pair_grid(p, 100)) pts.push_back(involute_point(p, s).real);
    CHECK(testutil::plane_fit_residual(pts) <= 1e-8);

    // sanity: the evolute itself is nowhere near planar
    std::vector<Vec3> helix_pts;
    for (double s : interior_grid(0.0, 8.0, 100)) helix_pts.push_back(position(p.evolute, s).real);
    CHECK(testutil::plane_fit_residual(helix_pts) > 0.05);
}

TEST_CASE("helix detection over the catalog") {
    for (const auto& c : catalog()) {
        CAPTURE(c.name);
        auto grid = interior_grid(c.lo, c.hi, 50);
        bool expected = std::find(kDetected.begin(), kDetected.end(), c.name) != kDetected.end();
        CHECK(is_helix(c, grid) == expected);
        if (expected)
            CHECK(helix_deviation(c, grid) <= 1e-9);
        else
            CHECK(helix_deviation(c, grid) > 1e-2);
    }
}

TEST_CASE("domain guard at the involute string length") {
    InvolutePair p{builtin("helix_3_4"), 3.0, 0.0};
    CHECK_NOTHROW(involute_point(p, 2.9));
    CHECK_THROWS_AS(involute_lambda(p, 3.0), OutOfDomain);
    CHECK_THROWS_AS(involute_point(p, 3.0), OutOfDomain);
    CHECK_THROWS_AS(involute_jets(p, 3.5), OutOfDomain);
    CHECK_THROWS_AS(involute_point(p, 9.0), OutOfDomain);
}
