#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dcurve/jet.hpp"

using namespace dcurve;

namespace {
using DJet = Jet<double, 4>;

std::mt19937 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937(seq);
}

double max_coeff_gap(const DJet& a, const DJet& b) {
    double m = 0.0;
    for (int k = 0; k <= 4; ++k) m = std::max(m, std::abs(a.c[k] - b.c[k]));
    return m;
}
}  // namespace

TEST_CASE("polynomial jets are exact") {
    DJet s = DJet::variable(3.0);
    DJet f = s * s;
    CHECK(f.c[0] == 9.0);
    CHECK(f.c[1] == 6.0);
    CHECK(f.c[2] == 2.0);
    CHECK(f.c[3] == 0.0);
    CHECK(f.c[4] == 0.0);

    DJet g = pow(DJet::variable(2.0), 3);
    CHECK(g.c[0] == 8.0);
    CHECK(g.c[1] == 12.0);
    CHECK(g.c[2] == 12.0);
    CHECK(g.c[3] == 6.0);
    CHECK(g.c[4] == 0.0);
}

TEST_CASE("sin jet at zero") {
    DJet f = sin(DJet::variable(0.0));
    CHECK(f.c[0] == 0.0);
    CHECK(f.c[1] == 1.0);
    CHECK(f.c[2] == 0.0);
    CHECK(f.c[3] == -1.0);
    CHECK(f.c[4] == 0.0);
}

TEST_CASE("sqrt jet recurrence") {
    DJet a;
    a.c = {4.0, 4.0, 0.0, 0.0, 0.0};
    DJet w = sqrt(a);
    CHECK(w.c[0] == 2.0);
    CHECK(w.c[1] == 1.0);
    CHECK(w.c[2] == -0.5);
    CHECK(w.c[3] == 0.75);

    DJet back = w * w;
    CHECK(max_coeff_gap(back, a) <= 1e-14);
}

TEST_CASE("reciprocal jet of 1/(1+s) at 0") {
    DJet one = DJet::constant(1.0);
    DJet f = one / (one + DJet::variable(0.0));
    CHECK(f.c[0] == 1.0);
    CHECK(f.c[1] == -1.0);
    CHECK(f.c[2] == 2.0);
    CHECK(f.c[3] == -6.0);
    CHECK(f.c[4] == 24.0);
}

TEST_CASE("tan jet matches series at 0") {
    DJet t = tan(DJet::variable(0.0));
    CHECK(t.c[0] == 0.0);
    CHECK(t.c[1] == 1.0);
    CHECK(t.c[2] == 0.0);
    CHECK(std::abs(t.c[3] - 2.0) < 1e-15);
    CHECK(t.c[4] == 0.0);
}

TEST_CASE("tan equals sin over cos") {
    auto g = rng_for("jet-tan");
    std::uniform_real_distribution<double> d(-1.2, 1.2);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        DJet v = DJet::variable(d(g));
        auto sc = sincos(v);
        worst = std::max(worst, max_coeff_gap(tan(v), sc.sin / sc.cos));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("double angle identity across recurrences") {
    auto g = rng_for("jet-double-angle");
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        DJet v = DJet::variable(d(g));
        DJet lhs = sin(v) * cos(v);
        DJet rhs = DJet::constant(0.5) * sin(DJet::constant(2.0) * v);
        worst = std::max(worst, max_coeff_gap(lhs, rhs));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("derivative interacts with product rule") {
    auto g = rng_for("jet-leibniz");
    std::uniform_real_distribution<double> d(0.2, 2.0);
    for (int i = 0; i < 200; ++i) {
        DJet a = sin(DJet::variable(d(g)));
        DJet b = sqrt(DJet::constant(1.0) + DJet::variable(d(g)) * DJet::variable(d(g)));
        auto lhs = derivative(a * b);
        auto rhs = derivative(a) * b.truncate<3>() + a.truncate<3>() * derivative(b);
        for (int k = 0; k <= 3; ++k) CHECK(std::abs(lhs.c[k] - rhs.c[k]) <= 1e-12);
    }
}

TEST_CASE("guards on jet operations") {
    DJet z = DJet::constant(0.0);
    CHECK_THROWS_AS(DJet::constant(1.0) / z, NonInvertible);
    CHECK_THROWS_AS(sqrt(DJet::constant(-2.0)), DomainError);
    CHECK_THROWS_AS(sqrt(z), DomainError);
    CHECK_THROWS_AS(pow(z, -1), DomainError);
}

TEST_CASE("dual coefficients carry the shifted derivative") {
    // With base point s0 + eps*sigma, the eps slot of c_k must be sigma * c_{k+1}.real.
    double sigma = 0.7;
    Jet4 v = Jet4::variable(DualScalar{0.3, sigma});
    Jet4 f = sin(v) * sqrt(Jet4::constant(DualScalar{2.0}) + v * v);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(f.c[k].dual - sigma * f.c[k + 1].real) <= 1e-12);
}

TEST_CASE("vector jets: algebraic identities") {
    auto g = rng_for("vecjet");
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        VecJet<double, 4> a{sin(DJet::variable(d(g))), cos(DJet::variable(d(g))),
                            DJet::variable(d(g)) * DJet::variable(d(g))};
        VecJet<double, 4> b{DJet::constant(1.0) + DJet::variable(d(g)),
                            sin(DJet::variable(d(g))), DJet::constant(d(g))};

        DJet lhs = dot(cross(a, b), cross(a, b));
        DJet rhs = dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b);
        CHECK(max_coeff_gap(lhs, rhs) <= 1e-10);

        auto ddot = derivative(dot(a, b));
        auto rule = dot(derivative(a), b.truncate<3>()) + dot(a.truncate<3>(), derivative(b));
        for (int k = 0; k <= 3; ++k) CHECK(std::abs(ddot.c[k] - rule.c[k]) <= 1e-10);
    }
}

TEST_CASE("at_order slices a dual vector jet") {
    VecJet4 v{Jet4::variable(DualScalar{1.0, 0.5}), Jet4::constant(DualScalar{2.0, 0.0}),
              Jet4::constant(DualScalar{0.0, 3.0})};
    DualVec3 p = at_order(v, 0);
    CHECK(p.real == Vec3{1, 2, 0});
    CHECK(p.dual == Vec3{0.5, 0, 3});
    DualVec3 d1 = at_order(v, 1);
    CHECK(d1.real == Vec3{1, 0, 0});
    CHECK(d1.dual == Vec3{0, 0, 0});
}

TEST_CASE("norm of a vector jet squares to self dot") {
    VecJet<double, 4> a{DJet::variable(0.4), sin(DJet::variable(0.9)),
                        DJet::constant(1.0) + DJet::variable(0.2)};
    DJet n = norm(a);
    CHECK(max_coeff_gap(n * n, dot(a, a)) <= 1e-12);
}

TEST_CASE("truncate keeps low orders") {
    DJet f = sin(DJet::variable(0.5));
    auto t = f.truncate<2>();
    CHECK(t.c[0] == f.c[0]);
    CHECK(t.c[1] == f.c[1]);
    CHECK(t.c[2] == f.c[2]);
}
