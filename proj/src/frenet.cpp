#include "dcurve/frenet.hpp"

#include <cmath>

#include "dcurve/oracle.hpp"

namespace dcurve {

template <int N>
FrenetApparatus frenet_general(const VecJet<DualScalar, N>& g, double s) {
    static_assert(N == 3 || N == 4);
    auto g1 = derivative(g);
    auto g2 = derivative(g1);
    auto g3 = derivative(g2);

    DualVec3 v1 = at_order(g, 1);
    DualVec3 v2 = at_order(g, 2);
    if (norm(v1.real) == 0.0) throw DegenerateCurve("vanishing speed");
    if (norm(cross(v1.real, v2.real)) == 0.0) throw DegenerateCurve("vanishing curvature");

    constexpr int M = N - 2;
    auto g1m = g1.template truncate<M>();
    auto c_jet = cross(g1m, g2);
    auto speed_jet = sqrt(dot(g1, g1));
    auto kappa_jet = sqrt(dot(c_jet, c_jet)) / pow(speed_jet.template truncate<M>(), 3);
    auto tau_jet = dot(cross(g1.template truncate<N - 3>(), g2.template truncate<N - 3>()), g3) /
                   dot(c_jet, c_jet).template truncate<N - 3>();

    FrenetApparatus a;
    a.s = s;
    a.speed = speed_jet.c[0];
    a.T = normalize(v1);
    a.B = normalize(cross(v1, v2));
    a.N = cross(a.B, a.T);
    a.kappa = kappa_jet.c[0];
    a.tau = tau_jet.c[0];
    a.kappa_prime = kappa_jet.c[1];
    if constexpr (N >= 4) a.tau_prime = tau_jet.c[1];
    a.W = smul(a.tau, a.T) + smul(a.kappa, a.B);
    return a;
}

template FrenetApparatus frenet_general<3>(const VecJet<DualScalar, 3>&, double);
template FrenetApparatus frenet_general<4>(const VecJet<DualScalar, 4>&, double);

FrenetApparatus frenet_unit_speed(const VecJet<DualScalar, 4>& g, double s, double tol) {
    auto g1 = derivative(g);
    auto g2 = derivative(g1);
    auto g3 = derivative(g2);

    DualVec3 v1 = at_order(g, 1);
    DualVec3 v2 = at_order(g, 2);
    if (norm(v1.real) == 0.0) throw DegenerateCurve("vanishing speed");
    DualScalar speed = norm(v1);
    if (mag(speed - DualScalar{1.0, 0.0}) > tol)
        throw NotUnitSpeed("dual speed deviates from 1 by " +
                           std::to_string(mag(speed - DualScalar{1.0, 0.0})));
    if (norm(v2.real) == 0.0) throw DegenerateCurve("vanishing curvature");

    auto kappa_jet = sqrt(dot(g2, g2));
    auto g1t = g1.truncate<1>();
    auto g2t = g2.truncate<1>();
    auto tau_jet = dot(cross(g1t, g2t), g3) / dot(g2t, g2t);

    FrenetApparatus a;
    a.s = s;
    a.speed = speed;
    a.kappa = kappa_jet.c[0];
    a.tau = tau_jet.c[0];
    a.kappa_prime = kappa_jet.c[1];
    a.tau_prime = tau_jet.c[1];
    a.T = normalize(v1);
    a.N = smul(DualScalar{1.0} / a.kappa, v2);
    a.B = cross(a.T, a.N);
    a.W = smul(a.tau, a.T) + smul(a.kappa, a.B);
    return a;
}

FrenetApparatus frenet_at(const CurveDef& c, double s) {
    return frenet_general<4>(eval_curve<4>(c, s), s);
}

FrenetApparatus frenet_unit_at(const CurveDef& c, double s) {
    return frenet_unit_speed(eval_curve<4>(c, s), s);
}

SplitApparatus split(const FrenetApparatus& a) {
    SplitApparatus o;
    o.t = a.T.real;
    o.n = a.N.real;
    o.b = a.B.real;
    o.w = a.W.real;
    o.t_star = a.T.dual;
    o.n_star = a.N.dual;
    o.b_star = a.B.dual;
    o.w_star = a.W.dual;
    o.k1 = a.kappa.real;
    o.k2 = a.tau.real;
    o.k1_star = a.kappa.dual;
    o.k2_star = a.tau.dual;
    return o;
}

DualAngle darboux_angle(const FrenetApparatus& a) {
    if (a.kappa.real <= 0.0) throw DegenerateCurve("darboux angle needs positive curvature");
    DualScalar den = sqrt(a.kappa * a.kappa + a.tau * a.tau);
    DualScalar sinp = a.tau / den;
    DualScalar cosp = a.kappa / den;
    DualAngle phi;
    phi.phi = std::atan2(sinp.real, cosp.real);
    phi.phi_star = sinp.dual * cosp.real - cosp.dual * sinp.real;
    return phi;
}

DualVec3 unit_darboux(const FrenetApparatus& a) { return normalize(a.W); }

namespace {

FrenetApparatus frame_field(const CurveDef& c, double t) {
    return frenet_general<4>(eval_curve_unchecked<4>(c, t), t);
}

}  // namespace

FrameFieldResiduals frenet_residuals(const CurveDef& c, double s) {
    double h = fd_default_step(1, s);
    DualVec3 Tp = fd_derivative<DualVec3>([&](double t) { return frame_field(c, t).T; }, s, 1, h);
    DualVec3 Np = fd_derivative<DualVec3>([&](double t) { return frame_field(c, t).N; }, s, 1, h);
    DualVec3 Bp = fd_derivative<DualVec3>([&](double t) { return frame_field(c, t).B; }, s, 1, h);
    FrenetApparatus a = frame_field(c, s);
    DualScalar vk = a.speed * a.kappa;
    DualScalar vt = a.speed * a.tau;
    FrameFieldResiduals r;
    r.t_eq = Tp - smul(vk, a.N);
    r.n_eq = Np - (smul(vt, a.B) - smul(vk, a.T));
    r.b_eq = Bp - (-smul(vt, a.N));
    return r;
}

FrameFieldResiduals darboux_residuals(const CurveDef& c, double s) {
    double h = fd_default_step(1, s);
    DualVec3 Tp = fd_derivative<DualVec3>([&](double t) { return frame_field(c, t).T; }, s, 1, h);
    DualVec3 Np = fd_derivative<DualVec3>([&](double t) { return frame_field(c, t).N; }, s, 1, h);
    DualVec3 Bp = fd_derivative<DualVec3>([&](double t) { return frame_field(c, t).B; }, s, 1, h);
    FrenetApparatus a = frame_field(c, s);
    FrameFieldResiduals r;
    r.t_eq = Tp - smul(a.speed, cross(a.W, a.T));
    r.n_eq = Np - smul(a.speed, cross(a.W, a.N));
    r.b_eq = Bp - smul(a.speed, cross(a.W, a.B));
    return r;
}

double orthonormality_deviation(const FrenetApparatus& a) {
    const DualScalar one{1.0, 0.0};
    double m = 0.0;
    m = std::max(m, mag(dot(a.T, a.T) - one));
    m = std::max(m, mag(dot(a.N, a.N) - one));
    m = std::max(m, mag(dot(a.B, a.B) - one));
    m = std::max(m, mag(dot(a.T, a.N)));
    m = std::max(m, mag(dot(a.T, a.B)));
    m = std::max(m, mag(dot(a.N, a.B)));
    m = std::max(m, mag(det(a.T, a.N, a.B) - one));
    return m;
}

}  // namespace dcurve
