#pragma once

#include <algorithm>
#include <cmath>

#include "dcurve/errors.hpp"

namespace dcurve {

/// Element a + eps*a_star of the dual numbers, eps^2 = 0.
struct DualScalar {
    double real = 0.0;
    double dual = 0.0;

    constexpr DualScalar() = default;
    constexpr DualScalar(double r) : real(r) {}
    constexpr DualScalar(double r, double d) : real(r), dual(d) {}

    constexpr DualScalar& operator+=(const DualScalar& o) {
        real += o.real;
        dual += o.dual;
        return *this;
    }
    constexpr DualScalar& operator-=(const DualScalar& o) {
        real -= o.real;
        dual -= o.dual;
        return *this;
    }
    constexpr DualScalar& operator*=(const DualScalar& o) {
        dual = real * o.dual + dual * o.real;
        real = real * o.real;
        return *this;
    }
};

constexpr DualScalar operator+(DualScalar a, const DualScalar& b) { return a += b; }
constexpr DualScalar operator-(DualScalar a, const DualScalar& b) { return a -= b; }
constexpr DualScalar operator*(DualScalar a, const DualScalar& b) { return a *= b; }
constexpr DualScalar operator-(const DualScalar& a) { return {-a.real, -a.dual}; }

inline DualScalar operator/(const DualScalar& a, const DualScalar& b) {
    if (b.real == 0.0) throw NonInvertible("division by dual number with zero real part");
    return {a.real / b.real, (a.dual * b.real - a.real * b.dual) / (b.real * b.real)};
}
inline DualScalar& operator/=(DualScalar& a, const DualScalar& b) { return a = a / b; }

constexpr bool operator==(const DualScalar& a, const DualScalar& b) {
    return a.real == b.real && a.dual == b.dual;
}
constexpr bool operator!=(const DualScalar& a, const DualScalar& b) { return !(a == b); }

/// f(a + eps b) = f(a) + eps b f'(a) for analytic f.
template <class F, class DF>
DualScalar lift(F&& f, DF&& df, const DualScalar& x) {
    return {f(x.real), x.dual * df(x.real)};
}

inline DualScalar sin(const DualScalar& x) {
    return {std::sin(x.real), x.dual * std::cos(x.real)};
}

inline DualScalar cos(const DualScalar& x) {
    return {std::cos(x.real), -x.dual * std::sin(x.real)};
}

inline DualScalar tan(const DualScalar& x) {
    double c = std::cos(x.real);
    if (c == 0.0) throw DomainError("tan at odd multiple of pi/2");
    return {std::tan(x.real), x.dual / (c * c)};
}

inline DualScalar sqrt(const DualScalar& x) {
    if (x.real <= 0.0) throw DomainError("sqrt requires positive real part");
    double r = std::sqrt(x.real);
    return {r, x.dual / (2.0 * r)};
}

inline DualScalar acos(const DualScalar& x) {
    if (x.real <= -1.0 || x.real >= 1.0) throw DomainError("acos requires |real| < 1");
    return {std::acos(x.real), -x.dual / std::sqrt(1.0 - x.real * x.real)};
}

/// Dual angle phi + eps phi_star; appears as the argument of dual trigonometry.
struct DualAngle {
    double phi = 0.0;
    double phi_star = 0.0;
};

inline DualScalar cos_of(const DualAngle& a) {
    return {std::cos(a.phi), -a.phi_star * std::sin(a.phi)};
}

inline DualScalar sin_of(const DualAngle& a) {
    return {std::sin(a.phi), a.phi_star * std::cos(a.phi)};
}

/// Inverts cos_of. Needs sin(phi) != 0 to recover the dual part.
inline DualAngle angle_from_cosine(const DualScalar& c) {
    if (c.real <= -1.0 || c.real >= 1.0) throw DegenerateAngle("cosine real part must lie in (-1, 1)");
    double phi = std::acos(c.real);
    return {phi, -c.dual / std::sin(phi)};
}

/// max of component magnitudes; the residual metric used throughout.
inline double mag(const DualScalar& x) {
    return std::max(std::abs(x.real), std::abs(x.dual));
}

/// Scale-aware gap |a-b| / (1 + max(|a|,|b|)).
inline double rel_gap(const DualScalar& a, const DualScalar& b) {
    return mag(a - b) / (1.0 + std::max(mag(a), mag(b)));
}

}  // namespace dcurve
