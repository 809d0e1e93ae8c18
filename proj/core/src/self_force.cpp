#include "edtail/self_force.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "edtail/quadrature.hpp"

namespace edtail {

namespace {

// Force-density numerator evaluated from a separation; shared by the raw
// density and the combined integrand.
MVec3 density_from_parts(const WorldlineState& st, const WorldlineState& ss,
                         const Separation& sep, double e) {
    const MVec3& q = sep.q;
    const double utq = mdot(st.u, q);
    const double utus = mdot(st.u, ss.u);
    const double rs = sep.r_s;
    const MVec3 t1 = (ss.u * utq - q * utus) * ((1.0 + mdot(q, ss.a)) / (rs * rs));
    const MVec3 t2 = (ss.a * utq - q * mdot(st.u, ss.a)) * (1.0 / rs);
    return (t1 + t2) * (e * e / sep.norm);
}

struct HistoryWindow {
    double s_far = 0.0;    // start of the quadrature domain
    bool pre_static = false;  // closed-form static pre-segment applies
};

HistoryWindow resolve_history(const Worldline& w, double tau,
                              const PrehistoryPolicy& policy) {
    if (policy.kind == PrehistoryPolicy::Kind::TruncateAt)
        return {policy.tau0, false};
    const Asymptote a = w.past_asymptote();
    if (a.kind == AsymptoteKind::None)
        throw std::domain_error("self-force: include-asymptote policy needs a past asymptote");
    return {std::min(a.tau_split, tau), a.kind == AsymptoteKind::Static};
}

// Pre-asymptote force: the closed-form field of the static segment ending
// at s_far, contracted with the current velocity. A uniform asymptote
// contributes nothing.
MVec3 presegment_force(const Worldline& w, double tau, double e,
                       const HistoryWindow& hw) {
    if (!hw.pre_static) return {};
    const WorldlineState now = w.eval(tau);
    const WorldlineState end = w.eval(hw.s_far);
    const MVec3 Ks = now.z - end.z;
    const double b = mdot(Ks, MVec3{1.0, 0.0, 0.0});
    const double D = b * b + mdot(Ks, Ks);
    if (D <= 1e-28 * (1.0 + Ks.enorm() * Ks.enorm())) return {};  // still on the line
    const FieldStrength f = line_segment_field(end.z, {1.0, 0.0, 0.0}, e, now.z,
                                               Direction::Retarded);
    return lorentz_force(f, now.u, e);
}

}  // namespace

MVec3 force_density(const Worldline& w, double tau, double s, double e) {
    if (s >= tau) throw std::invalid_argument("force_density: requires s < tau");
    const Separation sep = separation(w, tau, s);
    return density_from_parts(w.eval(tau), w.eval(s), sep, e);
}

MVec3 abraham_limit(const WorldlineState& state, double e) {
    const double a2 = mdot(state.a, state.a);
    return (state.adot - state.u * a2) * (2.0 / 3.0 * e * e);
}

namespace {

// q.(u(tau) - u(s)) loses two orders to cancellation (O(d) terms, O(d^3)
// result) when evaluated literally, which the 1/norm^3 then amplifies like
// 1/d^2. For short gaps expand q = d u_t + r and use 2 u_t.du = -du.du
// (exact from normalization), leaving only same-size arithmetic.
// Zeroth and first moments of the acceleration over offsets sigma in
// [0, d] from base, marching in direction dir: m0 = int a dsigma,
// m1 = int a sigma dsigma. One set of evaluations serves both. Nodes live
// in offset space: building them as t - base in absolute time leaves an
// ulp(t)-sized absolute error in the weight, O(eps/d) relative once d is
// small. The degree-5 rule handles the mid band; degree 13 the tiny gaps.
struct AccelMoments {
    MVec3 m0{};
    MVec3 m1{};
};

AccelMoments accel_moments(const Worldline& w, double base, double dir,
                           double d) {
    const double half = 0.5 * d;
    const bool fine = d < 5e-3;
    const int n = fine ? 7 : 3;
    AccelMoments m;
    for (int i = 0; i < n; ++i) {
        const double sg =
            half + half * (fine ? quad::kGL7x[i] : quad::kGL3x[i]);
        const double wt = fine ? quad::kGL7w[i] : quad::kGL3w[i];
        const MVec3 a = w.eval(base + dir * sg).a;
        m.m0 += a * wt;
        m.m1 += a * (wt * sg);
    }
    m.m0 *= half;
    m.m1 *= half;
    return m;
}

double mass_rate_num_short(const Worldline& w, double tau, double s) {
    const double d = tau - s;
    const AccelMoments m = accel_moments(w, s, 1.0, d);
    const MVec3 r = -m.m1;
    const MVec3 du = -m.m0;  // u(s) - u(tau)
    return 0.5 * d * mdot(du, du) - mdot(r, du);
}

// Mass-rate density from precomputed separation and endpoint velocities, so
// callers that already paid for them (the merged history sweep) do not
// recompute the geometry.
double mass_rate_from_parts(const Worldline& w, double tau, double s,
                            const Separation& sep, const MVec3& ut,
                            const MVec3& us, double e) {
    const double num = tau - s < 5e-2 ? mass_rate_num_short(w, tau, s)
                                      : mdot(sep.q, ut) - mdot(sep.q, us);
    return 0.5 * e * e * num / (sep.norm * sep.norm * sep.norm);
}

}  // namespace

double mass_rate_density(const Worldline& w, double tau, double s, double e) {
    if (s >= tau) throw std::invalid_argument("mass_rate_density: requires s < tau");
    const Separation sep = separation(w, tau, s);
    return mass_rate_from_parts(w, tau, s, sep, w.eval(tau).u, w.eval(s).u, e);
}

TailIntegrandSample combined_integrand(const Worldline& w, double tau, double s,
                                       double e) {
    if (s >= tau) throw std::invalid_argument("combined_integrand: requires s < tau");
    const Separation sep = separation(w, tau, s);
    const WorldlineState st = w.eval(tau), ss = w.eval(s);
    TailIntegrandSample out;
    out.s = s;
    out.raw_force_density = density_from_parts(st, ss, sep, e);
    out.counterterm = st.a * (0.5 * e * e / sep.norm);
    out.combined = out.raw_force_density + out.counterterm;
    out.mass_rate_density = mass_rate_density(w, tau, s, e);
    return out;
}

namespace {

// Simpson rule over the coincidence window [tau - cut, tau] with the
// analytic limit supplied at the endpoint.
MVec3 series_simpson(const Worldline& w, double tau, double e, double cut,
                     const MVec3& limit, int panels) {
    const double h = cut / panels;
    MVec3 acc{};
    for (int p = 0; p < panels; ++p) {
        const double s0 = tau - cut + p * h;
        const MVec3 f0 = combined_integrand(w, tau, s0, e).combined;
        const MVec3 fm = combined_integrand(w, tau, s0 + 0.5 * h, e).combined;
        const MVec3 f1 = (p + 1 == panels)
                             ? limit
                             : combined_integrand(w, tau, s0 + h, e).combined;
        acc += (f0 + fm * 4.0 + f1) * (h / 6.0);
    }
    return acc;
}

double series_simpson_mass(const Worldline& w, double tau, double e, double cut,
                           int panels) {
    // Endpoint limit by one-sided Richardson extrapolation.
    const double d = cut / 16.0;
    const double limit = 2.0 * mass_rate_density(w, tau, tau - d, e) -
                         mass_rate_density(w, tau, tau - 2.0 * d, e);
    const double h = cut / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double s0 = tau - cut + p * h;
        const double f0 = mass_rate_density(w, tau, s0, e);
        const double fm = mass_rate_density(w, tau, s0 + 0.5 * h, e);
        const double f1 = (p + 1 == panels) ? limit
                                            : mass_rate_density(w, tau, s0 + h, e);
        acc += (f0 + 4.0 * fm + f1) * (h / 6.0);
    }
    return acc;
}

// Joint sample of the three history integrands sharing one adaptive pass:
// raw force density, counterterm coefficient density e^2/(2 norm), and mass
// rate density. The counterterm part carries its e^2/2 factor so all three
// live on the force scale and one error norm covers them.
struct HistSample {
    MVec3 f{};
    double ct = 0.0;
    double mr = 0.0;
    HistSample& operator+=(const HistSample& o) {
        f += o.f;
        ct += o.ct;
        mr += o.mr;
        return *this;
    }
    HistSample operator+(const HistSample& o) const {
        HistSample r = *this;
        return r += o;
    }
    HistSample operator-(const HistSample& o) const {
        return {f - o.f, ct - o.ct, mr - o.mr};
    }
    HistSample operator*(double c) const { return {f * c, ct * c, mr * c}; }
    HistSample& operator*=(double c) {
        f *= c;
        ct *= c;
        mr *= c;
        return *this;
    }
};

double vnorm(const HistSample& v) {
    return v.f.enorm() + std::abs(v.ct) + std::abs(v.mr);
}

}  // namespace

SelfForceResult self_force(const Worldline& w, double tau, double e,
                           const PrehistoryPolicy& policy, double quad_tol) {
    const HistoryWindow hw = resolve_history(w, tau, policy);
    SelfForceResult out;
    if (tau <= hw.s_far) {
        out.force = presegment_force(w, tau, e, hw);
        return out;
    }
    const WorldlineState now = w.eval(tau);
    const double amag = now.a.enorm();
    const double scale = e * e * std::max(1.0, amag);
    // The coincidence window is sized by the invariant proper acceleration:
    // the integrand varies on the invariant curvature time 1/sqrt(a.a),
    // while the frame norm |a| grows like cosh of the rapidity and would
    // collapse the window (and explode the history quadrature) at high
    // boost for no accuracy gain.
    const double curv = std::sqrt(std::max(0.0, mdot(now.a, now.a)));
    const MVec3 limit = abraham_limit(now, e);

    // Coincidence window: shrink until one- and two-panel Simpson agree.
    // Halving stops as soon as the disagreement stops improving — past that
    // point it is integrand rounding noise, which only grows as the window
    // shrinks.
    double cut = std::min(1e-3 / std::max(1.0, curv), 0.5 * (tau - hw.s_far));
    MVec3 series{};
    double best_dis = std::numeric_limits<double>::infinity();
    for (int it = 0;; ++it) {
        const MVec3 one = series_simpson(w, tau, e, cut, limit, 1);
        const MVec3 two = series_simpson(w, tau, e, cut, limit, 2);
        const double dis = (one - two).enorm();
        if (dis >= best_dis) {
            cut *= 2.0;  // previous window was better; keep it
            series = series_simpson(w, tau, e, cut, limit, 2);
            break;
        }
        series = two;
        best_dis = dis;
        if (dis <= std::max(quad_tol * scale, 1e-15 * scale) || it >= 6) break;
        cut *= 0.5;
    }
    out.series_cut = cut;

    MVec3 force = presegment_force(w, tau, e, hw) + series;
    double mass = series_simpson_mass(w, tau, e, cut, 2);
    if (tau - cut > hw.s_far) {
        auto fres = quad::integrate<MVec3>(
            [&](double s) { return combined_integrand(w, tau, s, e).combined; },
            hw.s_far, tau - cut, quad_tol, quad_tol * scale);
        force += fres.value;
        out.quad_error += fres.error;
        auto mres = quad::integrate<double>(
            [&](double s) { return mass_rate_density(w, tau, s, e); }, hw.s_far,
            tau - cut, quad_tol, quad_tol * scale);
        mass += mres.value;
        out.quad_error += mres.error;
    }
    if (policy.kind == PrehistoryPolicy::Kind::IncludeAsymptote) {
        // Mass-rate contribution of the infinite pre-asymptote segment; the
        // integrand decays like 1/(tau-s)^2 there.
        auto mpre = quad::integrate_tail_below<double>(
            [&](double s) { return mass_rate_density(w, tau, s, e); }, hw.s_far,
            quad_tol, quad_tol * scale);
        mass += mpre.value;
        out.quad_error += mpre.error;
    }
    out.force = force;
    out.mass_rate = mass;
    return out;
}

SelfForceParts self_force_parts(const Worldline& w, double tau, double e,
                                const PrehistoryPolicy& policy, double quad_tol,
                                double series_cut_hint) {
    const HistoryWindow hw = resolve_history(w, tau, policy);
    SelfForceParts out;
    if (tau <= hw.s_far) {
        out.history_force = presegment_force(w, tau, e, hw);
        return out;
    }
    const MVec3 a_now = w.eval(tau).a;
    const double scale = e * e * std::max(1.0, a_now.enorm());
    // Invariant window sizing (see self_force); the smaller constant keeps
    // the first-order series = limit * cut approximation used by the
    // integrator well below the step error at this window size.
    const double curv = std::sqrt(std::max(0.0, mdot(a_now, a_now)));
    double cut = series_cut_hint > 0.0 ? series_cut_hint
                                       : 2e-4 / std::max(1.0, curv);
    cut = std::min(cut, 0.5 * (tau - hw.s_far));
    out.series_cut = cut;

    MVec3 force = presegment_force(w, tau, e, hw);
    double mass = series_simpson_mass(w, tau, e, cut, 2);
    if (tau - cut > hw.s_far) {
        // One adaptive pass for all three history integrals: they share the
        // same separation geometry and the same refinement pattern, and the
        // history sweep dominates each integrator stage.
        const WorldlineState st = w.eval(tau);
        auto hres = quad::integrate<HistSample>(
            [&](double s) -> HistSample {
                const Separation sep = separation(w, tau, s);
                const WorldlineState ss = w.eval(s);
                return {density_from_parts(st, ss, sep, e),
                        0.5 * e * e / sep.norm,
                        mass_rate_from_parts(w, tau, s, sep, st.u, ss.u, e)};
            },
            hw.s_far, tau - cut, quad_tol, quad_tol * scale);
        force += hres.value.f;
        out.counterterm_coefficient = hres.value.ct;
        mass += hres.value.mr;
        out.quad_error += hres.error;
    }
    if (policy.kind == PrehistoryPolicy::Kind::IncludeAsymptote) {
        auto mpre = quad::integrate_tail_below<double>(
            [&](double s) { return mass_rate_density(w, tau, s, e); }, hw.s_far,
            quad_tol, quad_tol * scale);
        mass += mpre.value;
    }
    out.history_force = force;
    out.mass_rate = mass;
    return out;
}

MVec3 tail_force_integrand(const Worldline& w, double tau1, double s, double e) {
    const WorldlineState s1 = w.eval(tau1), s2 = w.eval(s);
    const double lo = std::min(tau1, s), hi = std::max(tau1, s);
    // Threshold trade-off: the direct form below is exact up to a
    // cancellation noise of ~1e-16 |u|^2 / gap relative, negligible down to
    // gaps well under this threshold; the expansion costs 15 worldline
    // evaluations instead of 2, so it is reserved for genuinely short gaps.
    if (hi - lo < 5e-3) {
        // Near coincidence the numerator u2 (-q.u1) + q (u1.u2) is an O(d^2)
        // residue of O(d) terms. Expand q = d u1 + r with r and du obtained
        // by quadrature of u - u1 and a; the O(d) cancellation then happens
        // symbolically and the result is accurate to roundoff at any gap.
        const double d = tau1 - s;  // signed; negative on the advanced side
        if (d == 0.0)
            throw std::runtime_error(
                "tail_force_integrand: coincident emission and field times");
        const double sign = s < tau1 ? 1.0 : -1.0;
        // r = q - d u1 = -int a(t) (distance of t from the s endpoint) dt:
        // integrating the acceleration (instead of u - u1, whose subtraction
        // floor is 1e-16 |u|) keeps r accurate relative to its own O(a d^2)
        // size, so the integrand noise stays bounded as d -> 0. The node
        // offsets from s are built in offset space so the weight keeps full
        // relative precision at tiny gaps.
        const AccelMoments m = accel_moments(w, s, sign, std::abs(d));
        const MVec3 r = m.m1 * -1.0;
        const MVec3 du = m.m0 * -sign;  // u(s) - u(tau1)
        const double ru1 = mdot(r, s1.u);
        const double qq = d * d - 2.0 * d * ru1 - mdot(r, r);
        if (qq <= 0.0)
            throw std::runtime_error(
                "tail_force_integrand: null or spacelike separation");
        // u1.du = -du.du/2 exactly (both velocities are unit); the direct
        // contraction loses the leading |u|^2-sized terms to cancellation.
        const double u1du = -0.5 * mdot(du, du);
        const MVec3 num = (r + s1.u * ru1) * -1.0 + du * (d - ru1) +
                          (s1.u * d + r) * u1du;
        return num * (e * e / (qq * std::sqrt(qq)));
    }
    const MVec3 q = s1.z - s2.z;
    const double qq = -mdot(q, q);
    if (qq <= 0.0)
        throw std::runtime_error(
            "tail_force_integrand: null or spacelike separation");
    const double inv32 = 1.0 / (qq * std::sqrt(qq));
    return (s2.u * (-mdot(q, s1.u)) + q * mdot(s1.u, s2.u)) * (e * e * inv32);
}

TailForceResult tail_lorentz_force(const Worldline& w, double tau1, double e,
                                   Direction dir, double tau_obs, double delta_c,
                                   const PrehistoryPolicy& policy,
                                   double quad_tol) {
    if (!(delta_c > 0.0))
        throw std::invalid_argument("tail_lorentz_force: cutoff must be positive");
    const double scale = e * e * std::max(1.0, w.eval(tau1).a.enorm());
    TailForceResult out;
    out.divergence_coefficient = w.eval(tau1).a * (-0.5 * e * e);
    if (dir == Direction::Retarded) {
        const HistoryWindow hw = resolve_history(w, tau1, policy);
        if (tau1 - delta_c > hw.s_far) {
            auto res = quad::integrate<MVec3>(
                [&](double s) { return tail_force_integrand(w, tau1, s, e); },
                hw.s_far, tau1 - delta_c, quad_tol, quad_tol * scale);
            out.cutoff_integral = res.value;
        }
        if (policy.kind == PrehistoryPolicy::Kind::IncludeAsymptote) {
            auto pre = quad::integrate_tail_below<MVec3>(
                [&](double s) { return tail_force_integrand(w, tau1, s, e); },
                hw.s_far, quad_tol, quad_tol * scale);
            out.cutoff_integral += pre.value;
        }
    } else {
        if (tau1 > tau_obs)
            throw std::invalid_argument("tail_lorentz_force: tau1 must precede tau_obs");
        if (tau1 + delta_c < tau_obs) {
            auto res = quad::integrate<MVec3>(
                [&](double s) { return tail_force_integrand(w, tau1, s, e); },
                tau1 + delta_c, tau_obs, quad_tol, quad_tol * scale);
            out.cutoff_integral = res.value;
        }
    }
    return out;
}

void save_tail_samples_csv(const Worldline& w, double tau, double e,
                           const std::string& path, int samples, double min_gap,
                           double max_gap) {
    if (samples < 2 || !(0.0 < min_gap && min_gap < max_gap))
        throw std::invalid_argument("save_tail_samples_csv: bad sampling window");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "s,raw0,raw1,raw2,ct0,ct1,ct2,comb0,comb1,comb2,mass_rate_density\n";
    char buf[512];
    const double ratio = std::log(max_gap / min_gap);
    for (int k = 0; k < samples; ++k) {
        const double gap =
            max_gap * std::exp(-ratio * k / (samples - 1));
        const TailIntegrandSample t = combined_integrand(w, tau, tau - gap, e);
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g\n",
                      t.s, t.raw_force_density.t, t.raw_force_density.x,
                      t.raw_force_density.y, t.counterterm.t, t.counterterm.x,
                      t.counterterm.y, t.combined.t, t.combined.x, t.combined.y,
                      t.mass_rate_density);
        f << buf;
    }
}

}  // namespace edtail
