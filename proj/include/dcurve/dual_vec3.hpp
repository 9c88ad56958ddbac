#pragma once

#include <algorithm>
#include <cmath>

#include "dcurve/dual_scalar.hpp"
#include "dcurve/errors.hpp"

namespace dcurve {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
constexpr bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Element a + eps a_star of the D-module D^3.
struct DualVec3 {
    Vec3 real;
    Vec3 dual;
};

constexpr DualVec3 operator+(const DualVec3& a, const DualVec3& b) {
    return {a.real + b.real, a.dual + b.dual};
}
constexpr DualVec3 operator-(const DualVec3& a, const DualVec3& b) {
    return {a.real - b.real, a.dual - b.dual};
}
constexpr DualVec3 operator-(const DualVec3& a) { return {-a.real, -a.dual}; }
constexpr DualVec3 operator*(double s, const DualVec3& a) { return {s * a.real, s * a.dual}; }

/// Module action of a dual scalar: (l + eps l*)(a + eps a*) = la + eps(la* + l*a).
constexpr DualVec3 smul(const DualScalar& l, const DualVec3& a) {
    return {l.real * a.real, l.real * a.dual + l.dual * a.real};
}

constexpr DualScalar dot(const DualVec3& a, const DualVec3& b) {
    return {dot(a.real, b.real), dot(a.real, b.dual) + dot(a.dual, b.real)};
}

constexpr DualVec3 cross(const DualVec3& a, const DualVec3& b) {
    return {cross(a.real, b.real), cross(a.real, b.dual) + cross(a.dual, b.real)};
}

inline DualScalar norm(const DualVec3& a) {
    double r = norm(a.real);
    if (r == 0.0) throw ZeroRealPart("norm of dual vector with zero real part");
    return {r, dot(a.real, a.dual) / r};
}

inline DualVec3 normalize(const DualVec3& a) {
    DualScalar n = norm(a);
    return smul(DualScalar{1.0} / n, a);
}

inline bool is_unit(const DualVec3& a, double tol = 1e-9) {
    DualScalar n2 = dot(a, a);
    return std::abs(n2.real - 1.0) <= tol && std::abs(n2.dual) <= tol;
}

/// det(a, b, c) as a dual scalar, the triple product.
constexpr DualScalar det(const DualVec3& a, const DualVec3& b, const DualVec3& c) {
    return dot(a, cross(b, c));
}

/// Dual angle between unit dual vectors: cos Phi = <a, b>, spear geometry.
inline DualAngle dual_angle(const DualVec3& a, const DualVec3& b) {
    if (!is_unit(a) || !is_unit(b)) throw NotUnit("dual angle needs unit dual vectors");
    DualScalar c = dot(a, b);
    if (norm(cross(a.real, b.real)) == 0.0)
        throw DegenerateAngle("dual angle undefined for parallel real parts");
    return angle_from_cosine(c);
}

/// max of the two Euclidean slot norms; residual metric for vectors.
inline double vec_mag(const DualVec3& a) { return std::max(norm(a.real), norm(a.dual)); }

inline double rel_gap(const DualVec3& a, const DualVec3& b) {
    return vec_mag(a - b) / (1.0 + std::max(vec_mag(a), vec_mag(b)));
}

}  // namespace dcurve
