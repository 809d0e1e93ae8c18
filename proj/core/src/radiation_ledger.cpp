#include "edtail/radiation_ledger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "edtail/quadrature.hpp"

namespace edtail {

MVec3 paired_tail_integrand(const Worldline& w, double tau1, double delta,
                            double e) {
    // Snap delta so both emission times round to exactly tau1 -+ delta.
    // Otherwise the two gaps can differ by an ulp of tau1, and the 1/d pole
    // of the integrand amplifies that ulp into a spurious 1/delta^2 term in
    // the difference.
    const double d = (tau1 + delta) - tau1;
    return tail_force_integrand(w, tau1, tau1 - d, e) -
           tail_force_integrand(w, tau1, tau1 + d, e);
}

namespace {

// F_ret(tau1) - F_adv(tau1) with the advanced domain ending at tau_obs.
// Paired over delta in (0, delta_max] so the divergences cancel at the
// nodes; the one-sided leftovers are a finite distance from tau1.
MVec3 inner_difference(const Worldline& w, double tau1, double e,
                       const PrehistoryPolicy& policy, double tau_obs,
                       double quad_tol, double scale) {
    const bool truncated = policy.kind == PrehistoryPolicy::Kind::TruncateAt;
    const double ret_span =
        truncated ? tau1 - policy.tau0 : std::numeric_limits<double>::infinity();
    const double adv_span = tau_obs - tau1;
    const double dmax = std::min(ret_span, adv_span);
    // Keep every one-sided bound a representable distance from tau1 so the
    // adaptive quadrature can never land a node exactly on the singularity.
    // The omitted sliver is measure dfloor and its contribution to the outer
    // integral is far below any usable tolerance.
    const double dfloor =
        8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(tau1));
    const double dcut = std::max(dmax, dfloor);
    MVec3 total{};
    if (dmax > dfloor) {
        auto res = quad::integrate<MVec3>(
            [&](double d) { return paired_tail_integrand(w, tau1, d, e); },
            dfloor, dmax, quad_tol, quad_tol * scale);
        total += res.value;
    }
    if (ret_span > dcut) {
        if (truncated) {
            auto res = quad::integrate<MVec3>(
                [&](double s) { return tail_force_integrand(w, tau1, s, e); },
                policy.tau0, tau1 - dcut, quad_tol, quad_tol * scale);
            total += res.value;
        } else {
            auto res = quad::integrate_tail_below<MVec3>(
                [&](double s) { return tail_force_integrand(w, tau1, s, e); },
                tau1 - dcut, quad_tol, quad_tol * scale);
            total += res.value;
        }
    }
    if (adv_span > dcut) {
        auto res = quad::integrate<MVec3>(
            [&](double s) { return tail_force_integrand(w, tau1, s, e); },
            tau1 + dcut, tau_obs, quad_tol, quad_tol * scale);
        total -= res.value;
    }
    return total;
}

// Outer integral of f over [lo, tau]; the integrand carries integrable
// logarithmic endpoint singularities, removed by the v^2 substitution on
// each half.
template <class F>
auto outer_integral(F&& f, double lo, double tau, double quad_tol, double scale) {
    using V = decltype(f(lo));
    const double mid = 0.5 * (lo + tau);
    // Start each half a hair away from the endpoint: the substituted
    // integrand is ~ v log v there, so the omitted piece is O(v0^2 log v0),
    // while v0 = 0 would let subdivision push tau1 onto the endpoint itself.
    const double v0 = 1e-7 * std::sqrt(mid - lo);
    auto left = quad::integrate<V>(
        [&](double v) { return f(lo + v * v) * (2.0 * v); }, v0,
        std::sqrt(mid - lo), quad_tol, quad_tol * scale);
    auto right = quad::integrate<V>(
        [&](double v) { return f(tau - v * v) * (2.0 * v); }, v0,
        std::sqrt(tau - mid), quad_tol, quad_tol * scale);
    left.value += right.value;
    left.error += right.error;
    return left;
}

double outer_start(const Worldline& w, double tau,
                   const PrehistoryPolicy& policy) {
    if (policy.kind == PrehistoryPolicy::Kind::TruncateAt)
        return std::min(policy.tau0, tau);
    const Asymptote a = w.past_asymptote();
    if (a.kind == AsymptoteKind::None)
        throw std::domain_error("radiation ledger: prehistory policy unresolved");
    return std::min(a.tau_split, tau);
}

}  // namespace

MVec3 radiated_momentum(const Worldline& w, double tau, double e,
                        const PrehistoryPolicy& policy, double quad_tol) {
    const double lo = outer_start(w, tau, policy);
    const double scale = e * e * std::max(1.0, w.eval(tau).a.enorm());
    MVec3 total{};
    if (lo < tau) {
        auto res = outer_integral(
            [&](double t1) {
                return inner_difference(w, t1, e, policy, tau, quad_tol, scale);
            },
            lo, tau, quad_tol, scale);
        total = res.value;
    }
    if (policy.kind == PrehistoryPolicy::Kind::IncludeAsymptote && lo > w.earliest()) {
        auto res = quad::integrate_tail_below<MVec3>(
            [&](double t1) {
                return inner_difference(w, t1, e, policy, tau, quad_tol, scale);
            },
            lo, quad_tol, quad_tol * scale);
        total += res.value;
    }
    return total * -0.5;
}

AngularMomentum2 radiated_angular_momentum(const Worldline& w, double tau,
                                           double e,
                                           const PrehistoryPolicy& policy,
                                           double quad_tol) {
    const double lo = outer_start(w, tau, policy);
    const double scale =
        e * e * std::max(1.0, w.eval(tau).a.enorm()) *
        std::max(1.0, std::max(w.eval(lo).z.enorm(), w.eval(tau).z.enorm()));
    auto torque = [&](double t1) {
        const MVec3 d = inner_difference(w, t1, e, policy, tau, quad_tol, scale);
        return wedge_contravariant(w.eval(t1).z, d);
    };
    AngularMomentum2 total{};
    if (lo < tau) total = outer_integral(torque, lo, tau, quad_tol, scale).value;
    if (policy.kind == PrehistoryPolicy::Kind::IncludeAsymptote && lo > w.earliest())
        total += quad::integrate_tail_below<AngularMomentum2>(torque, lo, quad_tol,
                                                              quad_tol * scale)
                     .value;
    return total * -0.5;
}

MVec3 dressed_momentum(const Worldline& w, double tau, double e, double m,
                       const PrehistoryPolicy& policy, double quad_tol) {
    const WorldlineState now = w.eval(tau);
    double s_far;
    if (policy.kind == PrehistoryPolicy::Kind::TruncateAt) {
        s_far = std::min(policy.tau0, tau);
    } else {
        const Asymptote a = w.past_asymptote();
        if (a.kind == AsymptoteKind::None)
            throw std::domain_error("dressed_momentum: prehistory policy unresolved");
        s_far = std::min(a.tau_split, tau);
        const MVec3 u_asym = a.kind == AsymptoteKind::Static
                                 ? MVec3{1.0, 0.0, 0.0}
                                 : w.eval(s_far).u;
        // On the asymptote the integrand decays only like 1/(tau - s); the
        // integral is finite only when the numerator vanishes there.
        if ((u_asym - now.u).enorm() > 1e-12)
            throw std::domain_error(
                "dressed_momentum: diverges with this prehistory (asymptote "
                "velocity differs from u(tau))");
    }
    if (tau <= s_far) return now.u * m;

    auto integrand = [&](double s) {
        const Separation sep = separation(w, tau, s);
        return (w.eval(s).u - now.u) / sep.norm;
    };
    // Coincidence window by Simpson with the analytic limit -a(tau).
    const double cut =
        std::min(1e-3 / std::max(1.0, now.a.enorm()), 0.5 * (tau - s_far));
    MVec3 tail{};
    {
        const double h = 0.5 * cut;
        const MVec3 limit = -now.a;
        for (int p = 0; p < 2; ++p) {
            const double s0 = tau - cut + p * h;
            const MVec3 f0 = integrand(s0);
            const MVec3 fm = integrand(s0 + 0.5 * h);
            const MVec3 f1 = p == 1 ? limit : integrand(s0 + h);
            tail += (f0 + fm * 4.0 + f1) * (h / 6.0);
        }
    }
    if (tau - cut > s_far) {
        auto res = quad::integrate<MVec3>(integrand, s_far, tau - cut, quad_tol,
                                          quad_tol);
        tail += res.value;
    }
    return now.u * m + tail * (0.5 * e * e);
}

TabulatedWorldline SimulationTrace::to_worldline() const {
    Asymptote past{};
    if (prehistory.kind == PrehistoryPolicy::Kind::IncludeAsymptote && !nodes.empty())
        past = {AsymptoteKind::Static, nodes.front().tau};
    TabulatedWorldline w(past);
    for (const auto& n : nodes) w.append(n.tau, n.z, n.u);
    return w;
}

std::vector<LedgerReport> balance_residuals(const SimulationTrace& trace,
                                            std::size_t max_samples,
                                            double quad_tol,
                                            bool with_angular) {
    const std::size_t n = trace.nodes.size();
    if (n < 3) throw std::invalid_argument("balance_residuals: trace too short");
    const TabulatedWorldline w = trace.to_worldline();
    const double e = trace.e;
    const PrehistoryPolicy& pol = trace.prehistory;

    std::vector<std::size_t> picks;
    const std::size_t count = std::min<std::size_t>(max_samples, n - 2);
    for (std::size_t k = 0; k < count; ++k)
        picks.push_back(1 + k * (n - 3) / (count > 1 ? count - 1 : 1));
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());

    auto total_momentum = [&](std::size_t i) {
        const ParticleState& s = trace.nodes[i];
        const MVec3 pp = dressed_momentum(w, s.tau, e, s.m, pol, quad_tol);
        const MVec3 pr = radiated_momentum(w, s.tau, e, pol, quad_tol);
        AngularMomentum2 mt = wedge_contravariant(s.z, pp);
        if (with_angular)
            mt += radiated_angular_momentum(w, s.tau, e, pol, quad_tol);
        return std::tuple<MVec3, MVec3, AngularMomentum2>{pp, pr, mt};
    };

    std::vector<LedgerReport> out;
    for (std::size_t i : picks) {
        const ParticleState& s = trace.nodes[i];
        auto [pp_m, pr_m, mt_m] = total_momentum(i - 1);
        auto [pp_0, pr_0, mt_0] = total_momentum(i);
        auto [pp_p, pr_p, mt_p] = total_momentum(i + 1);
        const double dt = trace.nodes[i + 1].tau - trace.nodes[i - 1].tau;
        const MVec3 dP = ((pp_p + pr_p) - (pp_m + pr_m)) / dt;
        const AngularMomentum2 dM = (mt_p - mt_m) * (1.0 / dt);
        const FieldStrength fx = trace.external.at(s.tau);
        const MVec3 f_ext = lorentz_force(fx, s.u, e);
        LedgerReport rep;
        rep.tau = s.tau;
        rep.p_rad = pr_0;
        rep.m_rad = mt_0 - wedge_contravariant(s.z, pp_0);
        rep.p_part = pp_0;
        rep.mass = s.m;
        rep.balance_p = dP - f_ext;
        rep.balance_m = dM - wedge_contravariant(s.z, f_ext);
        rep.quad_error = quad_tol;
        out.push_back(rep);
    }
    return out;
}

void save_ledger_csv(const std::vector<LedgerReport>& reports,
                     const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "tau,p_rad0,p_rad1,p_rad2,p_part0,p_part1,p_part2,mass,"
         "Mrad01,Mrad02,Mrad12,bal_p0,bal_p1,bal_p2\n";
    char buf[512];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.tau, r.p_rad.t, r.p_rad.x, r.p_rad.y, r.p_part.t,
                      r.p_part.x, r.p_part.y, r.mass, r.m_rad.m01, r.m_rad.m02,
                      r.m_rad.m12, r.balance_p.t, r.balance_p.x, r.balance_p.y);
        f << buf;
    }
}

}  // namespace edtail
