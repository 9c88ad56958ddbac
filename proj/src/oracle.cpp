#include "dcurve/oracle.hpp"

namespace dcurve {

DualVec3 fd_oracle(const CurveDef& c, double s, int k, double h) {
    auto f = [&c](double t) { return at_order(eval_curve_unchecked<0>(c, t), 0); };
    return fd_derivative<DualVec3>(f, s, k, h);
}

DualVec3 fd_oracle(const CurveDef& c, double s, int k) {
    return fd_oracle(c, s, k, fd_default_step(k, s));
}

}  // namespace dcurve
