#include "dcurve/involute.hpp"

#include <algorithm>
#include <cmath>

namespace dcurve {

DualScalar involute_lambda(const InvolutePair& p, double s) {
    double mu = p.c1 - s;
    if (mu <= 0.0)
        throw OutOfDomain("involute needs c1 - s > 0, got c1 = " + std::to_string(p.c1) +
                          ", s = " + std::to_string(s));
    return {mu, p.c2};
}

DualVec3 involute_point(const InvolutePair& p, double s) {
    DualScalar lambda = involute_lambda(p, s);
    auto g = eval_curve<1>(p.evolute, s);
    DualVec3 v1 = at_order(g, 1);
    if (norm(v1.real) == 0.0) throw DegenerateCurve("vanishing speed");
    return at_order(g, 0) + smul(lambda, normalize(v1));
}

DualScalar involute_distance(const InvolutePair& p, double s) {
    return involute_lambda(p, s);
}

VecJet<DualScalar, 3> involute_jets(const InvolutePair& p, double s) {
    DualScalar lambda = involute_lambda(p, s);
    auto g = eval_curve<4>(p.evolute, s);
    auto g1 = derivative(g);
    auto t_jet = smul(Jet<DualScalar, 3>::constant(DualScalar{1.0}) / norm(g1), g1);
    Jet<DualScalar, 3> lambda_jet;
    lambda_jet.c[0] = lambda;
    lambda_jet.c[1] = DualScalar{-1.0, 0.0};
    return g.truncate<3>() + smul(lambda_jet, t_jet);
}

FrenetApparatus involute_apparatus_direct(const InvolutePair& p, double s) {
    return frenet_general<3>(involute_jets(p, s), s);
}

InvoluteFrame involute_frame_predicted(const FrenetApparatus& evolute) {
    DualAngle phi = darboux_angle(evolute);
    DualScalar c = cos_of(phi), si = sin_of(phi);
    InvoluteFrame f;
    f.T = evolute.N;
    f.N = smul(si, evolute.B) - smul(c, evolute.T);
    f.B = smul(si, evolute.T) + smul(c, evolute.B);
    return f;
}

DualScalar involute_kappa(const FrenetApparatus& e, const DualScalar& lambda) {
    DualScalar k2t2 = e.kappa * e.kappa + e.tau * e.tau;
    return sqrt(k2t2 / (lambda * lambda * e.kappa * e.kappa));
}

DualScalar involute_tau(const FrenetApparatus& e, const DualScalar& lambda) {
    if (!e.kappa_prime || !e.tau_prime)
        throw Error("involute torsion needs curvature rates of the evolute");
    DualScalar num = e.kappa * *e.tau_prime - *e.kappa_prime * e.tau;
    DualScalar k2t2 = e.kappa * e.kappa + e.tau * e.tau;
    return num / (lambda * e.kappa * k2t2);
}

DualScalar involute_arc_rate(const FrenetApparatus& e, const DualScalar& lambda) {
    return lambda * e.kappa;
}

DualScalar darboux_rotation_rate(const FrenetApparatus& e) {
    if (!e.kappa_prime || !e.tau_prime)
        throw Error("darboux rotation rate needs curvature rates");
    DualScalar num = e.kappa * *e.tau_prime - *e.kappa_prime * e.tau;
    return num / (e.kappa * e.kappa + e.tau * e.tau);
}

DualVec3 involute_darboux(const FrenetApparatus& e, const DualScalar& lambda) {
    DualScalar rate = darboux_rotation_rate(e);
    return smul(DualScalar{1.0} / (lambda * e.kappa), e.W + smul(rate, e.N));
}

DualVec3 involute_darboux_direction(const FrenetApparatus& e) {
    DualScalar rate = darboux_rotation_rate(e);
    DualScalar k2t2 = e.kappa * e.kappa + e.tau * e.tau;
    DualScalar den = sqrt(rate * rate + k2t2);
    DualVec3 c = unit_darboux(e);
    return smul(rate / den, e.N) + smul(sqrt(k2t2) / den, c);
}

double helix_deviation(const CurveDef& c, const std::vector<double>& grid) {
    double worst = 0.0;
    for (double s : grid) {
        FrenetApparatus a = frenet_at(c, s);
        if (!a.kappa_prime || !a.tau_prime) throw Error("helix test needs curvature rates");
        DualScalar ratio_rate =
            (*a.tau_prime * a.kappa - *a.kappa_prime * a.tau) / (a.kappa * a.kappa);
        worst = std::max(worst, mag(ratio_rate));
    }
    return worst;
}

bool is_helix(const CurveDef& c, const std::vector<double>& grid, double tol) {
    return helix_deviation(c, grid) <= tol;
}

}  // namespace dcurve
