#pragma once

#include "dcurve/curve.hpp"
#include "dcurve/frenet.hpp"

namespace dcurve {

/// An evolute curve together with the involute constants. The involute is
/// beta(s) = alpha(s) + lambda(s) T(s) with lambda = (c1 - s) + eps c2,
/// defined where c1 - s > 0.
struct InvolutePair {
    CurveDef evolute;
    double c1 = 0.0;
    double c2 = 0.0;
};

DualScalar involute_lambda(const InvolutePair& p, double s);

DualVec3 involute_point(const InvolutePair& p, double s);

/// Closed form |beta - alpha| = (c1 - s) + eps c2.
DualScalar involute_distance(const InvolutePair& p, double s);

/// Order-3 jets of beta, built from order-4 jets of the evolute.
VecJet<DualScalar, 3> involute_jets(const InvolutePair& p, double s);

/// Frame and curvatures of beta computed directly from its own jets.
FrenetApparatus involute_apparatus_direct(const InvolutePair& p, double s);

/// Frame of beta predicted from the evolute's apparatus alone:
/// T = N_e, N = -cos(phi) T_e + sin(phi) B_e, B = sin(phi) T_e + cos(phi) B_e,
/// with phi the evolute's Darboux angle.
struct InvoluteFrame {
    DualVec3 T, N, B;
};
InvoluteFrame involute_frame_predicted(const FrenetApparatus& evolute);

/// Involute curvatures from the evolute apparatus and lambda.
DualScalar involute_kappa(const FrenetApparatus& evolute, const DualScalar& lambda);
DualScalar involute_tau(const FrenetApparatus& evolute, const DualScalar& lambda);

/// d(sbar)/ds = lambda * kappa, the arc-length rate of the involute.
DualScalar involute_arc_rate(const FrenetApparatus& evolute, const DualScalar& lambda);

/// phi' = (kappa tau' - kappa' tau) / (kappa^2 + tau^2), the rotation rate of
/// the evolute's Darboux angle. Needs both curvature rates.
DualScalar darboux_rotation_rate(const FrenetApparatus& evolute);

/// Darboux vector of the involute from evolute data: (W + phi' N) / (lambda kappa).
DualVec3 involute_darboux(const FrenetApparatus& evolute, const DualScalar& lambda);

/// Unit Darboux direction of the involute from evolute data:
/// (phi' N + sqrt(kappa^2+tau^2) C) / sqrt(phi'^2 + kappa^2 + tau^2).
DualVec3 involute_darboux_direction(const FrenetApparatus& evolute);

/// max |(tau/kappa)'| over the grid; zero characterizes dual helices.
double helix_deviation(const CurveDef& c, const std::vector<double>& grid);
bool is_helix(const CurveDef& c, const std::vector<double>& grid, double tol = 1e-9);

}  // namespace dcurve
