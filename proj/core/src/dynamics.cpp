#include "edtail/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace edtail {

ExternalField ExternalField::constant(const FieldStrength& f, double tau_on,
                                      double tau_off) {
    if (!(tau_on <= tau_off))
        throw std::invalid_argument("ExternalField: tau_on must not exceed tau_off");
    ExternalField x;
    x.kind = Kind::Constant;
    x.f = f;
    x.tau_on = tau_on;
    x.tau_off = tau_off;
    return x;
}

FieldStrength ExternalField::at(double tau) const {
    if (kind == Kind::Constant && tau >= tau_on && tau <= tau_off) return f;
    return {};
}

namespace {

MVec3 renormalized(MVec3 u) {
    u.t = std::sqrt(1.0 + u.x * u.x + u.y * u.y);
    return u;
}

struct StageResult {
    MVec3 a;
    MVec3 self_force;
    double mass_rate = 0.0;
    double quad_error = 0.0;
};

// Acceleration at the newest node of the history, with the
// counterterm-proportional part of the self-force solved implicitly:
//   (m - C) a = F_history + series + F_ext.
// The series term uses the lagged (a, adot) supplied by the stepper.
StageResult stage_accel(const TabulatedWorldline& tab, const DynamicsConfig& cfg,
                        double tau, const MVec3& u, double m, const MVec3& a_lag,
                        const MVec3& adot_lag) {
    StageResult out;
    const MVec3 f_ext = lorentz_force(cfg.external.at(tau), u, cfg.e);
    if (!cfg.self_force_on) {
        out.a = f_ext / m;
        return out;
    }
    const SelfForceParts parts =
        self_force_parts(tab, tau, cfg.e, cfg.prehistory, cfg.quad_tol);
    WorldlineState lag;
    lag.u = u;
    lag.a = a_lag;
    lag.adot = adot_lag;
    const MVec3 series = abraham_limit(lag, cfg.e) * parts.series_cut;
    const double meff = m - parts.counterterm_coefficient;
    if (meff > 0.1 * m) {
        out.a = (parts.history_force + series + f_ext) / meff;
    } else {
        // The implicit split is ill-conditioned when the coincidence
        // counterterm rivals the mass (strong coupling, long history).
        // Lag the counterterm instead; the corrector stage restores
        // second order.
        out.a = (parts.history_force + series + f_ext +
                 a_lag * parts.counterterm_coefficient) / m;
    }
    out.self_force = parts.history_force + series +
                     out.a * parts.counterterm_coefficient;
    out.mass_rate = parts.mass_rate;
    out.quad_error = parts.quad_error;
    return out;
}

}  // namespace

SimulationTrace simulate(const DynamicsConfig& cfg) {
    if (!(cfg.h > 0.0)) throw std::invalid_argument("dynamics: h must be positive");
    if (!(cfg.tau_end > 0.0))
        throw std::invalid_argument("dynamics: tau_end must be positive");
    if (!(cfg.m0 > 0.0)) throw std::invalid_argument("dynamics: m0 must be positive");
    const std::size_t steps = static_cast<std::size_t>(std::llround(cfg.tau_end / cfg.h));
    if (steps == 0) throw std::invalid_argument("dynamics: tau_end shorter than one step");

    Asymptote past{};
    if (cfg.prehistory.kind == PrehistoryPolicy::Kind::IncludeAsymptote)
        past = {AsymptoteKind::Static, 0.0};
    TabulatedWorldline tab(past);

    SimulationTrace trace;
    trace.h = cfg.h;
    trace.e = cfg.e;
    trace.prehistory = cfg.prehistory;
    trace.external = cfg.external;

    MVec3 z = cfg.z0;
    MVec3 u = renormalized(cfg.u0);
    double m = cfg.m0;
    tab.append(0.0, z, u);
    trace.nodes.push_back({0.0, z, u, m, {}});

    MVec3 a_lag{}, a_lag2{};
    bool have_lag = false;
    const double reject_tol = 100.0 * cfg.h * cfg.h;

    for (std::size_t i = 0; i < steps; ++i) {
        const double tau = i * cfg.h;
        try {
        const MVec3 adot_lag =
            have_lag ? (a_lag - a_lag2) / cfg.h : MVec3{};
        const StageResult s1 =
            stage_accel(tab, cfg, tau, u, m, have_lag ? a_lag : MVec3{}, adot_lag);

        const MVec3 u_p = renormalized(u + s1.a * cfg.h);
        const MVec3 z_p = z + u * cfg.h + s1.a * (0.5 * cfg.h * cfg.h);
        tab.append(tau + cfg.h, z_p, u_p);
        const StageResult s2 =
            stage_accel(tab, cfg, tau + cfg.h, u_p, m, s1.a, adot_lag);

        const MVec3 u_new = renormalized(u + (s1.a + s2.a) * (0.5 * cfg.h));
        const MVec3 z_new = z + (u + u_new) * (0.5 * cfg.h);
        if ((u_p - u_new).enorm() > reject_tol * std::max(1.0, u.enorm()))
            throw NumericalFailure("dynamics: step rejected (predictor-corrector disagreement)");
        tab.pop_back();
        tab.append(tau + cfg.h, z_new, u_new);

        m += 0.5 * cfg.h * (s1.mass_rate + s2.mass_rate);
        if (!(m > 0.0)) throw NumericalFailure("dynamics: mass crossed zero");
        if (!u_new.finite() || !z_new.finite())
            throw NumericalFailure("dynamics: state became non-finite");

        z = z_new;
        u = u_new;
        trace.nodes.push_back({tau + cfg.h, z, u, m, {}});
        trace.diagnostics.push_back({s2.self_force, s2.mass_rate, s2.quad_error});

        a_lag2 = have_lag ? a_lag : s1.a;
        a_lag = s2.a;
        have_lag = true;
        } catch (const NumericalFailure& ex) {
            // Stop early and hand back the last-good trace.
            trace.failed = true;
            trace.failure = ex.what();
            break;
        }
    }
    return trace;
}

AccelFit fit_effective_acceleration(const SimulationTrace& trace, double tau_a,
                                    double tau_b) {
    const auto& ns = trace.nodes;
    std::vector<double> mags;
    for (std::size_t i = 1; i + 1 < ns.size(); ++i) {
        if (ns[i].tau < tau_a || ns[i].tau > tau_b) continue;
        const double dt = ns[i + 1].tau - ns[i - 1].tau;
        const MVec3 a = (ns[i + 1].u - ns[i - 1].u) / dt;
        mags.push_back(std::sqrt(std::max(0.0, mdot(a, a))));
    }
    if (mags.size() < 10)
        throw std::invalid_argument("fit_effective_acceleration: window too short");
    double mean = 0.0;
    for (double v : mags) mean += v;
    mean /= static_cast<double>(mags.size());
    double dev = 0.0;
    for (double v : mags) dev = std::max(dev, std::abs(v - mean));
    return {mean, dev};
}

void SimulationTrace::save_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "tau,z0,z1,z2,u0,u1,u2,m,F_self0,F_self1,F_self2,mdot,quad_err\n";
    char buf[512];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const ParticleState& n = nodes[i];
        // Diagnostics are per-step; node 0 has none.
        const StepDiagnostics d = i == 0 ? StepDiagnostics{} : diagnostics[i - 1];
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,%.17g,%.17g,%.17g\n",
                      n.tau, n.z.t, n.z.x, n.z.y, n.u.t, n.u.x, n.u.y, n.m,
                      d.self_force.t, d.self_force.x, d.self_force.y,
                      d.mass_rate, d.quad_error);
        f << buf;
    }
}

}  // namespace edtail
