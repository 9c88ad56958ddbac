#include "dcurve/curve.hpp"

#include <algorithm>

namespace dcurve {

namespace {

// Built-in curves, written in the same format the CLI accepts. The real parts
// of circle, helix_3_4, and wave are unit speed by construction; dual parts are
// chosen so the suffixed variants stay unit speed in the dual sense except
// helix_3_4_dual, which deliberately is not.
const char* kCatalogSrc = R"(
curve circle {
  real = (2*cos(s/2), 2*sin(s/2), 0)
  domain = [0, 6.2]
}

curve circle_dual {
  real = (2*cos(s/2), 2*sin(s/2), 0)
  dual = (0, 0, s/2)
  domain = [0, 6.2]
}

curve helix_3_4 {
  real = (3*cos(s/5), 3*sin(s/5), 4*s/5)
  domain = [0, 8]
}

curve helix_3_4_dual {
  real = (3*cos(s/5), 3*sin(s/5), 4*s/5)
  dual = (0, 0, s/2)
  domain = [0, 8]
}

curve helix_3_4_screw {
  real = (3*cos(s/5), 3*sin(s/5), 4*s/5)
  dual = (-(0.3*sin(s/5)), 0.3*cos(s/5), 0.4)
  domain = [0, 8]
}

curve helix_3_4_ruled {
  real = (3*cos(s/5), 3*sin(s/5), 4*s/5)
  dual = (20*sin(s/5) - 4*s*cos(s/5), -(4*s*sin(s/5)) - 20*cos(s/5), 0.3*s^2)
  domain = [0, 8]
}

curve wave {
  real = (2*cos(sin(s/2)), 2*sin(sin(s/2)), 2 - 2*cos(s/2))
  domain = [0.2, 5.8]
}

curve wave_dual {
  real = (2*cos(sin(s/2)), 2*sin(sin(s/2)), 2 - 2*cos(s/2))
  dual = (-(0.5*sin(sin(s/2))*cos(s/2)), 0.5*cos(sin(s/2))*cos(s/2), 0.5*sin(s/2))
  domain = [0.2, 5.8]
}

curve twisted_cubic {
  real = (s, s^2, s^3)
  domain = [0.25, 2]
}

curve twisted_cubic_dual {
  real = (s, s^2, s^3)
  dual = (0, 0, s/2)
  domain = [0.25, 2]
}
)";

}  // namespace

std::vector<double> interior_grid(double lo, double hi, int n) {
    std::vector<double> g;
    g.reserve(n);
    double step = (hi - lo) / (n + 1);
    for (int i = 1; i <= n; ++i) g.push_back(lo + i * step);
    return g;
}

double unit_speed_deviation(const CurveDef& c, const std::vector<double>& grid) {
    double worst = 0.0;
    for (double s : grid) {
        DualVec3 v = at_order(eval_curve<1>(c, s), 1);
        worst = std::max(worst, mag(norm(v) - DualScalar{1.0, 0.0}));
    }
    return worst;
}

void require_unit_speed(const CurveDef& c, const std::vector<double>& grid, double tol) {
    double dev = unit_speed_deviation(c, grid);
    if (dev > tol)
        throw NotUnitSpeed("curve '" + c.name + "' is not unit speed (deviation " +
                           std::to_string(dev) + ")");
}

const std::vector<CurveDef>& catalog() {
    static const std::vector<CurveDef> defs = parse_curves(kCatalogSrc);
    return defs;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& c : catalog()) names.push_back(c.name);
    return names;
}

bool is_builtin(const std::string& name) {
    for (const auto& c : catalog())
        if (c.name == name) return true;
    return false;
}

const CurveDef& builtin(const std::string& name) {
    for (const auto& c : catalog())
        if (c.name == name) return c;
    throw Error("unknown built-in curve '" + name + "'");
}

}  // namespace dcurve
