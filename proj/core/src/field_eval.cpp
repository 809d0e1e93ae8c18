#include "edtail/field_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "edtail/quadrature.hpp"

namespace edtail {

namespace {

void check_query(const FieldQuery& q) {
    if (!(q.quad_tol > 0.0 && q.quad_tol <= 1e-2))
        throw std::invalid_argument("FieldQuery: quad_tol must lie in (0, 1e-2]");
}

struct ConePoint {
    double tau;       // light-cone root
    MVec3 K;          // x - z(tau_root), null
    double residual;  // (K.K) left by the root finder
};

ConePoint cone_point(const Worldline& w, const MVec3& x, Direction dir) {
    const LightConeRoot root =
        dir == Direction::Retarded ? retarded_time(w, x) : advanced_time(w, x);
    if (root.on_worldline)
        throw std::domain_error("field point lies on the worldline");
    const MVec3 K = x - w.eval(root.tau).z;
    return {root.tau, K, mdot(K, K)};
}

// -(K.K) at emission time tau, built against the known null K at the cone
// root so the value stays accurate near the root.
double minus_KK(const Worldline& w, const ConePoint& cp, double tau,
                const MVec3& K_direct) {
    const double gap = std::abs(cp.tau - tau);
    if (gap < 5e-2) {
        const double lo = std::min(cp.tau, tau), hi = std::max(cp.tau, tau);
        MVec3 delta = quad::gl7<MVec3>([&](double t) { return w.eval(t).u; }, lo, hi);
        if (tau > cp.tau) delta = -delta;  // delta = z(root) - z(tau)
        // The root finder's residual is dropped, not subtracted: keeping it
        // would make -(K.K) nonzero at the numeric root and distort the
        // integrand over a sqrt(residual)-wide band. Dropping it instead
        // shifts the effective root by O(residual), which enters the
        // integral only linearly.
        return -2.0 * mdot(cp.K, delta) - mdot(delta, delta);
    }
    return -mdot(K_direct, K_direct);
}

// Integrand of the field history integral (no charge factor).
FieldStrength field_kernel(const WorldlineState& s, const MVec3& K, double mkk) {
    const double r = -mdot(K, s.u);
    const double inv = 1.0 / std::sqrt(mkk);
    return (wedge(s.u, K) * ((1.0 + mdot(K, s.a)) / (r * r)) +
            wedge(s.a, K) * (1.0 / r)) * inv;
}

struct Presegment {
    MVec3 z_end;   // split point on the worldline
    MVec3 u;       // asymptote velocity
    bool active = false;
    AsymptoteKind kind = AsymptoteKind::None;
};

// Resolve the asymptote on the relevant side and clamp the split at the
// cone root; returns the effective split time.
double resolve_split(const Worldline& w, Direction dir, double tau_root,
                     Presegment& pre) {
    const Asymptote a =
        dir == Direction::Retarded ? w.past_asymptote() : w.future_asymptote();
    if (a.kind == AsymptoteKind::None)
        throw std::domain_error(
            "history integral needs an asymptotic regime on this side");
    double split = dir == Direction::Retarded ? std::min(a.tau_split, tau_root)
                                              : std::max(a.tau_split, tau_root);
    const WorldlineState s = w.eval(split);
    pre.z_end = s.z;
    pre.u = a.kind == AsymptoteKind::Static ? MVec3{1.0, 0.0, 0.0} : s.u;
    pre.active = true;
    pre.kind = a.kind;
    return split;
}

}  // namespace

FieldStrength line_segment_field(const MVec3& z_end, const MVec3& u, double e,
                                 const MVec3& x, Direction dir,
                                 bool end_on_cone) {
    const MVec3 Ks = x - z_end;
    const double b = mdot(Ks, u);
    const double kk = end_on_cone ? 0.0 : mdot(Ks, Ks);
    const double D = b * b + kk;
    if (D <= 0.0)
        throw std::domain_error("line_segment_field: field point on the line");
    const double r_end = dir == Direction::Retarded ? -b : b;
    if (r_end < 0.0)
        throw std::domain_error("line_segment_field: segment end not visible");
    // r_end^2 - D = -Ks.Ks; using it directly keeps the root-of-cone case
    // (where it vanishes identically) free of subtractive rounding noise.
    const double frac = std::sqrt(std::max(0.0, -kk)) / r_end;
    return wedge(u, Ks) * (e * (1.0 - frac) / D);
}

FieldStrength field_static_segment(double e, const MVec3& x) {
    const double r = x.spatial_norm();
    if (!(x.t > r) || r == 0.0)
        throw std::domain_error("field_static_segment: requires x0 > r > 0");
    return line_segment_field({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, e, x,
                              Direction::Retarded);
}

FieldStrength field_uniform_closed(const MVec3& z0, const MVec3& u, double e,
                                   const MVec3& x) {
    if (std::abs(mdot(u, u) + 1.0) > 1e-9)
        throw std::invalid_argument("field_uniform_closed: u not normalized");
    const MVec3 K0 = x - z0;
    const double b = mdot(K0, u);
    const double D = b * b + mdot(K0, K0);
    if (D <= 0.0) return {};  // on the line: K collinear with u, field vanishes
    return wedge(u, K0) * (e / D);
}

FieldSample field_with_error(const Worldline& w, const FieldQuery& q) {
    check_query(q);
    const ConePoint cp = cone_point(w, q.x, q.direction);
    Presegment pre;
    const double split = resolve_split(w, q.direction, cp.tau, pre);

    const double span = std::abs(cp.tau - split);
    FieldStrength total = line_segment_field(pre.z_end, pre.u, q.charge, q.x,
                                             q.direction, span == 0.0);
    double err = 0.0;
    if (span > 0.0) {
        const double sgn = q.direction == Direction::Retarded ? 1.0 : -1.0;
        // tau = tau_root -+ v^2 removes the inverse-square-root endpoint
        // singularity of the history integrand.
        auto g = [&](double v) -> FieldStrength {
            const double tau = cp.tau - sgn * v * v;
            const WorldlineState s = w.eval(tau);
            const MVec3 K = q.x - s.z;
            const double mkk = minus_KK(w, cp, tau, K);
            return field_kernel(s, K, mkk) * (2.0 * v);
        };
        auto res = quad::integrate<FieldStrength>(g, 0.0, std::sqrt(span),
                                                  q.quad_tol, 0.0);
        total += res.value * q.charge;
        err = std::abs(q.charge) * res.error;
    }
    return {total, err};
}

FieldStrength field(const Worldline& w, const FieldQuery& q) {
    return field_with_error(w, q).f;
}

MVec3 potential(const Worldline& w, const FieldQuery& q) {
    check_query(q);
    const ConePoint cp = cone_point(w, q.x, q.direction);
    Presegment pre;
    const double split = resolve_split(w, q.direction, cp.tau, pre);

    // Regularized pre-asymptote antiderivative: the log-divergent constant
    // at infinite past (future) is dropped, fixing A^0 = e ln r for the
    // static charge.
    const MVec3 Ks = q.x - pre.z_end;
    const double b = mdot(Ks, pre.u);
    // When the asymptote segment runs all the way to the cone root,
    // Ks is null by construction; do not let the root residual leak in.
    const double kk = split == cp.tau ? 0.0 : mdot(Ks, Ks);
    const double D = b * b + kk;
    const double s_end = q.direction == Direction::Retarded ? -b : b;
    if (s_end <= 0.0 || D <= 0.0)
        throw std::domain_error("potential: degenerate pre-asymptote geometry");
    // s_end^2 - D = -Ks.Ks, exact when the segment ends on the cone root.
    const double psi = std::log(s_end - std::sqrt(std::max(0.0, -kk)));
    const MVec3 u_cov{-pre.u.t, pre.u.x, pre.u.y};
    MVec3 A_cov = u_cov * (q.charge * psi);

    const double span = std::abs(cp.tau - split);
    if (span > 0.0) {
        const double sgn = q.direction == Direction::Retarded ? 1.0 : -1.0;
        auto g = [&](double v) -> MVec3 {
            const double tau = cp.tau - sgn * v * v;
            const WorldlineState s = w.eval(tau);
            const MVec3 K = q.x - s.z;
            const double mkk = minus_KK(w, cp, tau, K);
            return MVec3{-s.u.t, s.u.x, s.u.y} * (2.0 * v / std::sqrt(mkk));
        };
        auto res = quad::integrate<MVec3>(g, 0.0, std::sqrt(span), q.quad_tol,
                                          0.0);
        A_cov += res.value * q.charge;
    }
    return {-A_cov.t, A_cov.x, A_cov.y};  // raise indices
}

MaxwellResidual maxwell_residuals(const std::function<FieldStrength(const MVec3&)>& f,
                                  const MVec3& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("maxwell_residuals: h must be positive");
    const FieldStrength ft_p = f({x.t + h, x.x, x.y}), ft_m = f({x.t - h, x.x, x.y});
    const FieldStrength fx_p = f({x.t, x.x + h, x.y}), fx_m = f({x.t, x.x - h, x.y});
    const FieldStrength fy_p = f({x.t, x.x, x.y + h}), fy_m = f({x.t, x.x, x.y - h});
    const double inv2h = 0.5 / h;
    auto d0 = [&](double p, double m) { return (p - m) * inv2h; };
    MaxwellResidual r;
    r.h = h;
    r.faraday = d0(ft_p.h, ft_m.h) - d0(fy_p.e1, fy_m.e1) + d0(fx_p.e2, fx_m.e2);
    r.gauss = d0(fx_p.e1, fx_m.e1) + d0(fy_p.e2, fy_m.e2);
    r.ampere1 = -d0(ft_p.e1, ft_m.e1) + d0(fy_p.h, fy_m.h);
    r.ampere2 = -d0(ft_p.e2, ft_m.e2) - d0(fx_p.h, fx_m.h);
    return r;
}

MaxwellResidual maxwell_residuals(const Worldline& w, const MVec3& x, double e,
                                  double h, double quad_tol) {
    return maxwell_residuals(
        [&](const MVec3& p) {
            FieldQuery q{p, e, Direction::Retarded, quad_tol};
            return field(w, q);
        },
        x, h);
}

}  // namespace edtail
