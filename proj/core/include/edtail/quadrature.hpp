#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "edtail/geometry.hpp"

// Adaptive Gauss-Kronrod (G7/K15) quadrature over scalar- or vector-valued
// integrands, plus the node tables used for short-interval velocity
// integration. All nodes are interior, so integrands never get evaluated
// at interval endpoints; endpoint singularities removed by substitution
// stay out of reach of the rule.

namespace edtail::quad {

inline double vnorm(double v) { return std::abs(v); }
inline double vnorm(const MVec3& v) { return v.enorm(); }
inline double vnorm(const FieldStrength& v) { return v.enorm(); }
inline double vnorm(const AngularMomentum2& v) { return v.enorm(); }

template <class V>
struct Result {
    V value{};
    double error = 0.0;
};

namespace detail {

// G7/K15 abscissae on [0,1] with Gauss and Kronrod weights.
inline constexpr double kNodes[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0,                  0.204432940075298892},
    {0.586087235467691130, 0.0,                  0.169004726639267903},
    {0.864864423359769073, 0.0,                  0.104790010322250184},
    {0.991455371120812639, 0.0,                  0.022935322010529225},
};

template <class V, class F>
Result<V> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    V y0 = f(c);
    V g = y0 * kNodes[0][1];
    V k = y0 * kNodes[0][2];
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNodes[i][0];
        V yi = f(c + dx) + f(c - dx);
        g += yi * kNodes[i][1];
        k += yi * kNodes[i][2];
    }
    g *= half;
    k *= half;
    const double diff = vnorm(g - k);
    // QUADPACK-style sharpened estimate.
    double err = diff;
    if (diff > 0.0) err = diff * std::sqrt(std::min(1.0, 200.0 * diff));
    return {k, err};
}

}  // namespace detail

/// Adaptively integrate f over [a, b]. The tolerance is
/// max(abs_tol, rel_tol * |I|), applied to the global estimate.
template <class V, class F>
Result<V> integrate(const F& f, double a, double b, double rel_tol = 1e-9,
                    double abs_tol = 0.0, int max_intervals = 4000) {
    if (a == b) return {};
    struct Seg {
        double a, b, err;
        V val;
    };
    auto first = detail::gk15<V>(f, a, b);
    std::vector<Seg> segs{{a, b, first.error, first.value}};
    for (int n = 0; n < max_intervals; ++n) {
        V total{};
        double toterr = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            toterr += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        const double tol = std::max(abs_tol, rel_tol * vnorm(total));
        if (toterr <= tol || segs[worst].err == 0.0) return {total, toterr};
        Seg s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b) return {total, toterr};  // interval exhausted
        auto l = detail::gk15<V>(f, s.a, m);
        auto r = detail::gk15<V>(f, m, s.b);
        segs[worst] = {s.a, m, l.error, l.value};
        segs.push_back({m, s.b, r.error, r.value});
    }
    V total{};
    double toterr = 0.0;
    for (const auto& s : segs) {
        total += s.val;
        toterr += s.err;
    }
    return {total, toterr};
}

/// Integrate f over the half-infinite domain (-inf, b] via s = b + 1 - 1/t,
/// t in (0, 1]. The integrand must decay at least like 1/s^2.
template <class V, class F>
Result<V> integrate_tail_below(const F& f, double b, double rel_tol = 1e-9,
                               double abs_tol = 0.0) {
    auto g = [&](double t) -> V {
        const double s = b + 1.0 - 1.0 / t;
        return f(s) * (1.0 / (t * t));
    };
    return integrate<V>(g, 0.0, 1.0, rel_tol, abs_tol);
}

// 7-point Gauss-Legendre on [-1,1]; used for short-gap position increments
// where differencing absolute coordinates would lose precision.
inline constexpr double kGL7x[7] = {
    -0.949107912342758525, -0.741531185599394440, -0.405845151377397167,
    0.0,
    0.405845151377397167, 0.741531185599394440, 0.949107912342758525};
inline constexpr double kGL7w[7] = {
    0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
    0.417959183673469388,
    0.381830050505118945, 0.279705391489276668, 0.129484966168869693};

/// Integrate a smooth vector function over the short interval [a, b]
/// with a single 7-point Gauss-Legendre rule (degree 13).
template <class V, class F>
V gl7(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    V acc{};
    for (int i = 0; i < 7; ++i) acc += f(c + half * kGL7x[i]) * kGL7w[i];
    return acc * half;
}

inline constexpr double kGL3x[3] = {-0.774596669241483377, 0.0,
                                    0.774596669241483377};
inline constexpr double kGL3w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

/// Single 3-point Gauss-Legendre rule (degree 5); for short smooth
/// intervals where the degree-13 rule would be overkill.
template <class V, class F>
V gl3(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    V acc{};
    for (int i = 0; i < 3; ++i) acc += f(c + half * kGL3x[i]) * kGL3w[i];
    return acc * half;
}

/// 7-point Gauss-Legendre over an offset sigma in [0, d]. The nodes are
/// built in offset space, so f receives sigma with full relative precision
/// even when d is many orders below the absolute coordinate scale; mapping
/// sigma to an absolute coordinate is the caller's choice.
template <class V, class F>
V gl7_offset(const F& f, double d) {
    const double half = 0.5 * d;
    V acc{};
    for (int i = 0; i < 7; ++i) acc += f(half + half * kGL7x[i]) * kGL7w[i];
    return acc * half;
}

}  // namespace edtail::quad
