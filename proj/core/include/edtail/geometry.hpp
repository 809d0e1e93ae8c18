#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

// Vector and tensor algebra in 2+1-dimensional Minkowski space with
// metric diag(-1, 1, 1). Index 0 is the time component throughout.

namespace edtail {

/// A 3-vector in Minkowski space, components (t, x, y).
struct MVec3 {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;

    constexpr MVec3() = default;
    constexpr MVec3(double t_, double x_, double y_) : t(t_), x(x_), y(y_) {}

    constexpr MVec3 operator+(const MVec3& o) const { return {t + o.t, x + o.x, y + o.y}; }
    constexpr MVec3 operator-(const MVec3& o) const { return {t - o.t, x - o.x, y - o.y}; }
    constexpr MVec3 operator-() const { return {-t, -x, -y}; }
    constexpr MVec3 operator*(double s) const { return {t * s, x * s, y * s}; }
    constexpr MVec3 operator/(double s) const { return {t / s, x / s, y / s}; }
    MVec3& operator+=(const MVec3& o) { t += o.t; x += o.x; y += o.y; return *this; }
    MVec3& operator-=(const MVec3& o) { t -= o.t; x -= o.x; y -= o.y; return *this; }
    MVec3& operator*=(double s) { t *= s; x *= s; y *= s; return *this; }

    /// Euclidean norm of all three components (diagnostic scale, not invariant).
    double enorm() const { return std::sqrt(t * t + x * x + y * y); }
    /// Length of the spatial part.
    double spatial_norm() const { return std::hypot(x, y); }

    bool finite() const { return std::isfinite(t) && std::isfinite(x) && std::isfinite(y); }
};

constexpr MVec3 operator*(double s, const MVec3& v) { return v * s; }

/// Minkowski scalar product, -a0*b0 + a1*b1 + a2*b2.
constexpr double mdot(const MVec3& a, const MVec3& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y;
}

/// Antisymmetric rank-2 tensor F_{ab} packed as its three independent
/// components: F_{01} = -E1, F_{02} = -E2, F_{12} = H.
struct FieldStrength {
    double e1 = 0.0;
    double e2 = 0.0;
    double h = 0.0;

    constexpr FieldStrength() = default;
    constexpr FieldStrength(double e1_, double e2_, double h_) : e1(e1_), e2(e2_), h(h_) {}

    constexpr FieldStrength operator+(const FieldStrength& o) const {
        return {e1 + o.e1, e2 + o.e2, h + o.h};
    }
    constexpr FieldStrength operator-(const FieldStrength& o) const {
        return {e1 - o.e1, e2 - o.e2, h - o.h};
    }
    constexpr FieldStrength operator*(double s) const { return {e1 * s, e2 * s, h * s}; }
    constexpr FieldStrength operator/(double s) const { return {e1 / s, e2 / s, h / s}; }
    FieldStrength& operator+=(const FieldStrength& o) {
        e1 += o.e1; e2 += o.e2; h += o.h; return *this;
    }
    FieldStrength& operator*=(double s) { e1 *= s; e2 *= s; h *= s; return *this; }

    double enorm() const { return std::sqrt(e1 * e1 + e2 * e2 + h * h); }
    bool finite() const { return std::isfinite(e1) && std::isfinite(e2) && std::isfinite(h); }

    /// Full covariant array F_{ab}; antisymmetric by construction.
    std::array<std::array<double, 3>, 3> covariant() const {
        return {{{0.0, -e1, -e2}, {e1, 0.0, h}, {e2, -h, 0.0}}};
    }
};

constexpr FieldStrength operator*(double s, const FieldStrength& f) { return f * s; }

/// Contravariant array F^{ab} = eta^{ac} eta^{bd} F_{cd}; the E-row signs
/// flip relative to the covariant array.
inline std::array<std::array<double, 3>, 3> raise_indices(const FieldStrength& f) {
    return {{{0.0, f.e1, f.e2}, {-f.e1, 0.0, f.h}, {-f.e2, -f.h, 0.0}}};
}

/// Pack a contravariant array back into component form.
inline FieldStrength lower_indices(const std::array<std::array<double, 3>, 3>& fup) {
    return {fup[0][1], fup[0][2], fup[1][2]};
}

/// Wedge product (a ^ b)_{mn} = a_m b_n - a_n b_m with indices lowered
/// by the metric, packed into (e1, e2, h).
constexpr FieldStrength wedge(const MVec3& a, const MVec3& b) {
    // a_0 = -a.t etc.; F_{01} = -e1, F_{02} = -e2, F_{12} = h.
    return {a.t * b.x - a.x * b.t,
            a.t * b.y - a.y * b.t,
            a.x * b.y - a.y * b.x};
}

/// Lorentz force e * u_a F^{ma} on a unit timelike velocity u.
/// The result is Minkowski-orthogonal to u for any antisymmetric F.
inline MVec3 lorentz_force(const FieldStrength& f, const MVec3& u, double e) {
    // Tolerance scales with |u|^2: at large boosts the -t^2 + x^2 + y^2
    // cancellation leaves rounding residue of order eps * t^2 even for an
    // exactly normalized velocity.
    if (std::abs(mdot(u, u) + 1.0) > 1e-9 * (1.0 + u.enorm() * u.enorm()))
        throw std::invalid_argument("lorentz_force: velocity is not normalized to (u.u) = -1");
    return MVec3{u.x * f.e1 + u.y * f.e2,
                 u.t * f.e1 + u.y * f.h,
                 u.t * f.e2 - u.x * f.h} * e;
}

/// Antisymmetric angular-momentum tensor M^{mn} (contravariant components).
struct AngularMomentum2 {
    double m01 = 0.0;
    double m02 = 0.0;
    double m12 = 0.0;

    constexpr AngularMomentum2() = default;
    constexpr AngularMomentum2(double a, double b, double c) : m01(a), m02(b), m12(c) {}

    constexpr AngularMomentum2 operator+(const AngularMomentum2& o) const {
        return {m01 + o.m01, m02 + o.m02, m12 + o.m12};
    }
    constexpr AngularMomentum2 operator-(const AngularMomentum2& o) const {
        return {m01 - o.m01, m02 - o.m02, m12 - o.m12};
    }
    constexpr AngularMomentum2 operator*(double s) const { return {m01 * s, m02 * s, m12 * s}; }
    AngularMomentum2& operator+=(const AngularMomentum2& o) {
        m01 += o.m01; m02 += o.m02; m12 += o.m12; return *this;
    }
    AngularMomentum2& operator*=(double s) { m01 *= s; m02 *= s; m12 *= s; return *this; }
    double enorm() const { return std::sqrt(m01 * m01 + m02 * m02 + m12 * m12); }
};

constexpr AngularMomentum2 operator*(double s, const AngularMomentum2& m) { return m * s; }

/// Torque-style wedge of contravariant vectors: M^{mn} = a^m b^n - a^n b^m.
constexpr AngularMomentum2 wedge_contravariant(const MVec3& a, const MVec3& b) {
    return {a.t * b.x - a.x * b.t,
            a.t * b.y - a.y * b.t,
            a.x * b.y - a.y * b.x};
}

}  // namespace edtail
