#pragma once

#include <cmath>

#include "dcurve/curve.hpp"
#include "dcurve/dual_vec3.hpp"

namespace dcurve {

/// Step sizes tuned per order so truncation and roundoff stay balanced.
inline double fd_default_step(int k, double s) {
    constexpr double c[5] = {0.0, 1e-3, 4e-3, 1e-2, 5e-2};
    if (k < 0 || k > 4) throw Error("derivative order must be 0..4");
    return c[k] * (1.0 + std::abs(s));
}

/// Plain central difference of order-2 accuracy for f^(k), k = 0..4.
template <class V, class F>
V fd_stencil(F&& f, double s, int k, double h) {
    switch (k) {
        case 0: return f(s);
        case 1: return (1.0 / (2 * h)) * (f(s + h) - f(s - h));
        case 2: return (1.0 / (h * h)) * (f(s + h) - 2.0 * f(s) + f(s - h));
        case 3:
            return (1.0 / (2 * h * h * h)) *
                   (f(s + 2 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2 * h));
        case 4:
            return (1.0 / (h * h * h * h)) *
                   (f(s + 2 * h) - 4.0 * f(s + h) + 6.0 * f(s) - 4.0 * f(s - h) +
                    f(s - 2 * h));
        default: throw Error("derivative order must be 0..4");
    }
}

/// One Richardson step on the central stencil, killing the h^2 error term.
template <class V, class F>
V fd_derivative(F&& f, double s, int k, double h) {
    if (k == 0) return f(s);
    V coarse = fd_stencil<V>(f, s, k, h);
    V fine = fd_stencil<V>(f, s, k, h / 2);
    return (1.0 / 3.0) * (4.0 * fine - coarse);
}

/// k-th derivative of the curve position by finite differences. Evaluates the
/// expressions slightly outside the declared domain near its ends.
DualVec3 fd_oracle(const CurveDef& c, double s, int k, double h);
DualVec3 fd_oracle(const CurveDef& c, double s, int k);

}  // namespace dcurve
