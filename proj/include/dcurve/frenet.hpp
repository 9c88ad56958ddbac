#pragma once

#include <optional>

#include "dcurve/curve.hpp"
#include "dcurve/dual_vec3.hpp"
#include "dcurve/jet.hpp"

namespace dcurve {

/// Frame, curvatures, and their parameter rates of a dual curve at one point.
/// kappa_prime/tau_prime are rates in the curve parameter, present when the
/// input jet order allows them (order 3 gives kappa_prime, order 4 both).
struct FrenetApparatus {
    double s = 0.0;
    DualVec3 T, N, B, W;
    DualScalar kappa, tau;
    DualScalar speed;
    std::optional<DualScalar> kappa_prime, tau_prime;
};

/// Arbitrary-speed formulas on an order-N jet (N = 3 or 4).
template <int N>
FrenetApparatus frenet_general(const VecJet<DualScalar, N>& g, double s);

/// Unit-speed formulas; throws NotUnitSpeed if the dual speed is not 1.
FrenetApparatus frenet_unit_speed(const VecJet<DualScalar, 4>& g, double s,
                                  double tol = 1e-9);

FrenetApparatus frenet_at(const CurveDef& c, double s);
FrenetApparatus frenet_unit_at(const CurveDef& c, double s);

/// Real and eps slots of the apparatus, the component form used in reports.
struct SplitApparatus {
    Vec3 t, n, b, w;
    Vec3 t_star, n_star, b_star, w_star;
    double k1 = 0, k2 = 0, k1_star = 0, k2_star = 0;
};

SplitApparatus split(const FrenetApparatus& a);

/// Dual angle between W and B; cos = kappa/sqrt(kappa^2+tau^2). Well defined
/// whenever kappa has positive real part, including tau = 0.
DualAngle darboux_angle(const FrenetApparatus& a);

/// W/|W|, the unit Darboux direction.
DualVec3 unit_darboux(const FrenetApparatus& a);

/// Residuals of the frame derivative equations, evaluated by differencing the
/// frame fields. Real slot checks the real system, eps slot the dual system.
struct FrameFieldResiduals {
    DualVec3 t_eq, n_eq, b_eq;
};

/// X' = speed * (rotation) with X in {T, N, B}.
FrameFieldResiduals frenet_residuals(const CurveDef& c, double s);

/// X' = speed * W ^ X.
FrameFieldResiduals darboux_residuals(const CurveDef& c, double s);

/// max |<X,Y> - delta| over the frame pairs.
double orthonormality_deviation(const FrenetApparatus& a);

}  // namespace dcurve
