#pragma once

#include <string>
#include <vector>

#include "dcurve/expr.hpp"
#include "dcurve/jet.hpp"

namespace dcurve {

/// Evaluates the curve as an order-N dual-vector jet. Real and dual component
/// expressions are run through Jet<double,N> separately and zipped, so the eps
/// slot of coefficient k is exactly the k-th derivative of the dual part.
template <int N>
VecJet<DualScalar, N> eval_curve_unchecked(const CurveDef& c, double s) {
    using DJ = Jet<double, N>;
    DJ var = DJ::variable(s);
    VecJet<DualScalar, N> out;
    Jet<DualScalar, N>* comps[3] = {&out.x, &out.y, &out.z};
    for (int i = 0; i < 3; ++i) {
        DJ re = eval_expr(*c.real[i], var);
        DJ du = eval_expr(*c.dual[i], var);
        for (int k = 0; k <= N; ++k) comps[i]->c[k] = DualScalar{re.c[k], du.c[k]};
    }
    return out;
}

template <int N>
VecJet<DualScalar, N> eval_curve(const CurveDef& c, double s) {
    if (!(s >= c.lo && s <= c.hi))
        throw OutOfDomain("parameter " + std::to_string(s) + " outside domain [" +
                          std::to_string(c.lo) + ", " + std::to_string(c.hi) + "] of curve '" +
                          c.name + "'");
    return eval_curve_unchecked<N>(c, s);
}

inline DualVec3 position(const CurveDef& c, double s) {
    return at_order(eval_curve<0>(c, s), 0);
}

/// n points strictly inside [lo, hi], uniformly spaced.
std::vector<double> interior_grid(double lo, double hi, int n);

/// max deviation of the dual speed from 1 + 0*eps over the grid.
double unit_speed_deviation(const CurveDef& c, const std::vector<double>& grid);

void require_unit_speed(const CurveDef& c, const std::vector<double>& grid, double tol = 1e-9);

const std::vector<CurveDef>& catalog();
std::vector<std::string> catalog_names();
bool is_builtin(const std::string& name);
const CurveDef& builtin(const std::string& name);

}  // namespace dcurve
