#pragma once

#include <array>
#include <cmath>

#include "dcurve/dual_scalar.hpp"
#include "dcurve/dual_vec3.hpp"
#include "dcurve/errors.hpp"

namespace dcurve {

inline constexpr auto kBinom = [] {
    std::array<std::array<double, 9>, 9> b{};
    for (int n = 0; n < 9; ++n) {
        b[n][0] = 1.0;
        for (int k = 1; k <= n; ++k)
            b[n][k] = b[n - 1][k - 1] + (k < n ? b[n - 1][k] : 0.0);
    }
    return b;
}();

constexpr double leading(double x) { return x; }
constexpr double leading(const DualScalar& x) { return x.real; }

/// Truncated Taylor jet in the derivative-value convention: c[k] = f^(k)(s0).
/// T is the coefficient ring, double or DualScalar.
template <class T, int N>
struct Jet {
    static_assert(N >= 0 && N <= 8);
    using value_type = T;
    std::array<T, N + 1> c{};

    static Jet constant(const T& v) {
        Jet j;
        j.c[0] = v;
        return j;
    }

    /// Jet of the identity map s -> s at base point v.
    static Jet variable(const T& v) {
        Jet j;
        j.c[0] = v;
        if constexpr (N >= 1) j.c[1] = T(1.0);
        return j;
    }

    template <int M>
    Jet<T, M> truncate() const {
        static_assert(M <= N);
        Jet<T, M> r;
        for (int k = 0; k <= M; ++k) r.c[k] = c[k];
        return r;
    }
};

template <class T, int N>
Jet<T, N> operator+(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

template <class T, int N>
Jet<T, N> operator-(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

template <class T, int N>
Jet<T, N> operator-(const Jet<T, N>& a) {
    Jet<T, N> r;
    for (int k = 0; k <= N; ++k) r.c[k] = -a.c[k];
    return r;
}

// Leibniz rule: (fg)^(k) = sum_j C(k,j) f^(j) g^(k-j).
template <class T, int N>
Jet<T, N> operator*(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    for (int k = 0; k <= N; ++k) {
        T acc{};
        for (int j = 0; j <= k; ++j) acc += T(kBinom[k][j]) * a.c[j] * b.c[k - j];
        r.c[k] = acc;
    }
    return r;
}

// Triangular solve of b * w = a order by order.
template <class T, int N>
Jet<T, N> operator/(const Jet<T, N>& a, const Jet<T, N>& b) {
    if (leading(b.c[0]) == 0.0) throw NonInvertible("jet division by zero leading coefficient");
    Jet<T, N> w;
    w.c[0] = a.c[0] / b.c[0];
    for (int k = 1; k <= N; ++k) {
        T acc = a.c[k];
        for (int j = 0; j < k; ++j) acc -= T(kBinom[k][j]) * w.c[j] * b.c[k - j];
        w.c[k] = acc / b.c[0];
    }
    return w;
}

template <class T, int N>
Jet<T, N> sqrt(const Jet<T, N>& a) {
    if (leading(a.c[0]) <= 0.0) throw DomainError("jet sqrt requires positive leading coefficient");
    using std::sqrt;
    Jet<T, N> w;
    w.c[0] = sqrt(a.c[0]);
    T two_w0 = T(2.0) * w.c[0];
    // w*w = a gives a triangular recurrence for w_k.
    for (int k = 1; k <= N; ++k) {
        T acc = a.c[k];
        for (int j = 1; j < k; ++j) acc -= T(kBinom[k][j]) * w.c[j] * w.c[k - j];
        w.c[k] = acc / two_w0;
    }
    return w;
}

template <class T, int N>
struct SinCosJets {
    Jet<T, N> sin, cos;
};

// Coupled recurrence from s' = c u', c' = -s u'.
template <class T, int N>
SinCosJets<T, N> sincos(const Jet<T, N>& u) {
    using std::cos;
    using std::sin;
    SinCosJets<T, N> r;
    r.sin.c[0] = sin(u.c[0]);
    r.cos.c[0] = cos(u.c[0]);
    for (int k = 1; k <= N; ++k) {
        T sa{}, ca{};
        for (int j = 0; j < k; ++j) {
            T f = T(kBinom[k - 1][j]) * u.c[k - j];
            sa += f * r.cos.c[j];
            ca += f * r.sin.c[j];
        }
        r.sin.c[k] = sa;
        r.cos.c[k] = -ca;
    }
    return r;
}

template <class T, int N>
Jet<T, N> sin(const Jet<T, N>& u) {
    return sincos(u).sin;
}

template <class T, int N>
Jet<T, N> cos(const Jet<T, N>& u) {
    return sincos(u).cos;
}

// t' = (1 + t^2) u', with g = 1 + t^2 filled in lockstep.
template <class T, int N>
Jet<T, N> tan(const Jet<T, N>& u) {
    if (std::cos(leading(u.c[0])) == 0.0) throw DomainError("tan at odd multiple of pi/2");
    using std::tan;
    Jet<T, N> t, g;
    t.c[0] = tan(u.c[0]);
    g.c[0] = T(1.0) + t.c[0] * t.c[0];
    for (int k = 1; k <= N; ++k) {
        T acc{};
        for (int j = 0; j < k; ++j) acc += T(kBinom[k - 1][j]) * g.c[j] * u.c[k - j];
        t.c[k] = acc;
        T gacc{};
        for (int j = 0; j <= k; ++j) gacc += T(kBinom[k][j]) * t.c[j] * t.c[k - j];
        g.c[k] = gacc;
    }
    return t;
}

template <class T, int N>
Jet<T, N> pow(const Jet<T, N>& a, int e) {
    if (e < 0) throw DomainError("jet pow requires a nonnegative exponent");
    Jet<T, N> r = Jet<T, N>::constant(T(1.0));
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

/// Jet of f': drops the order by one.
template <class T, int N>
Jet<T, N - 1> derivative(const Jet<T, N>& a) {
    static_assert(N >= 1);
    Jet<T, N - 1> r;
    for (int k = 0; k < N; ++k) r.c[k] = a.c[k + 1];
    return r;
}

template <class T, int N>
struct VecJet {
    Jet<T, N> x, y, z;

    template <int M>
    VecJet<T, M> truncate() const {
        return {x.template truncate<M>(), y.template truncate<M>(), z.template truncate<M>()};
    }
};

template <class T, int N>
VecJet<T, N> operator+(const VecJet<T, N>& a, const VecJet<T, N>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

template <class T, int N>
VecJet<T, N> operator-(const VecJet<T, N>& a, const VecJet<T, N>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <class T, int N>
VecJet<T, N> smul(const Jet<T, N>& s, const VecJet<T, N>& a) {
    return {s * a.x, s * a.y, s * a.z};
}

template <class T, int N>
Jet<T, N> dot(const VecJet<T, N>& a, const VecJet<T, N>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T, int N>
VecJet<T, N> cross(const VecJet<T, N>& a, const VecJet<T, N>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T, int N>
Jet<T, N> norm(const VecJet<T, N>& a) {
    return sqrt(dot(a, a));
}

template <class T, int N>
VecJet<T, N - 1> derivative(const VecJet<T, N>& a) {
    static_assert(N >= 1);
    return {derivative(a.x), derivative(a.y), derivative(a.z)};
}

using Jet4 = Jet<DualScalar, 4>;
using VecJet4 = VecJet<DualScalar, 4>;

/// k-th derivative of a dual-vector jet as a plain DualVec3.
template <int N>
DualVec3 at_order(const VecJet<DualScalar, N>& v, int k) {
    const DualScalar& x = v.x.c[k];
    const DualScalar& y = v.y.c[k];
    const DualScalar& z = v.z.c[k];
    return {{x.real, y.real, z.real}, {x.dual, y.dual, z.dual}};
}

}  // namespace dcurve
