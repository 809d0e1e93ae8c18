#pragma once

#include "edtail/field_eval.hpp"
#include "edtail/geometry.hpp"
#include "edtail/worldline.hpp"

// Tail self-force machinery: the Lorentz self-force density, its divergent
// coincidence limit and counterterm, the regularized history integral, the
// retarded/advanced tail Lorentz forces, and the inertial-mass rate.

namespace edtail {

/// How history integrals treat the trajectory before the simulated window.
struct PrehistoryPolicy {
    enum class Kind { IncludeAsymptote, TruncateAt };
    Kind kind = Kind::IncludeAsymptote;
    double tau0 = 0.0;

    static PrehistoryPolicy include_asymptote() { return {Kind::IncludeAsymptote, 0.0}; }
    static PrehistoryPolicy truncate_at(double tau0) { return {Kind::TruncateAt, tau0}; }
};

/// Lorentz self-force density f(tau, s): the field integrand emitted at s,
/// contracted with the velocity at tau. Diverges like e^2 a / (2 (tau-s))
/// at coincidence.
MVec3 force_density(const Worldline& w, double tau, double s, double e);

/// Finite coincidence limit of the regularized integrand,
/// (2/3) e^2 (adot - a^2 u).
MVec3 abraham_limit(const WorldlineState& state, double e);

struct TailIntegrandSample {
    double s = 0.0;
    MVec3 raw_force_density;
    MVec3 counterterm;
    MVec3 combined;
    double mass_rate_density = 0.0;
};

/// force_density plus the counterterm (e^2/2) a(tau) / sqrt(-(q.q)); the
/// 1/(tau-s) divergences cancel and the sum tends to abraham_limit.
TailIntegrandSample combined_integrand(const Worldline& w, double tau, double s,
                                       double e);

/// Integrand of the mass-rate integral,
/// (e^2/2) [(q.u_tau) - (q.u_s)] / (-(q.q))^{3/2}; finite at coincidence.
double mass_rate_density(const Worldline& w, double tau, double s, double e);

struct SelfForceResult {
    MVec3 force;
    double mass_rate = 0.0;
    double series_cut = 0.0;  // coincidence window handled by series
    double quad_error = 0.0;
};

/// Regularized tail self-force and mass rate at proper time tau.
SelfForceResult self_force(const Worldline& w, double tau, double e,
                           const PrehistoryPolicy& policy, double quad_tol = 1e-9);

/// Pieces of the self-force with the acceleration-proportional part kept
/// separate, for solving the implicit equation of motion:
///   total = history_force + counterterm_coefficient * a(tau) + series term.
/// The series term over the coincidence window [tau - series_cut, tau] is
/// series_cut * abraham_limit and must be added by the caller from its best
/// current (a, adot).
struct SelfForceParts {
    MVec3 history_force;               // force-density integral, no counterterm
    double counterterm_coefficient = 0.0;  // (e^2/2) * I of 1/sqrt(-(q.q))
    double series_cut = 0.0;
    double mass_rate = 0.0;
    double quad_error = 0.0;
};

SelfForceParts self_force_parts(const Worldline& w, double tau, double e,
                                const PrehistoryPolicy& policy,
                                double quad_tol = 1e-9,
                                double series_cut_hint = 0.0);

/// Cutoff tail Lorentz force in one light-cone direction together with the
/// coefficient of its 1/Delta divergence (-e^2 a(tau1)/2); only documented
/// combinations of the two directions are finite.
struct TailForceResult {
    MVec3 cutoff_integral;
    MVec3 divergence_coefficient;
};

TailForceResult tail_lorentz_force(const Worldline& w, double tau1, double e,
                                   Direction dir, double tau_obs, double delta_c,
                                   const PrehistoryPolicy& policy,
                                   double quad_tol = 1e-9);

/// Bare integrand of the tail Lorentz force at emission time s.
MVec3 tail_force_integrand(const Worldline& w, double tau1, double s, double e);

/// Diagnostic CSV of integrand samples at log-spaced gaps below tau:
/// s,raw0,raw1,raw2,ct0,ct1,ct2,comb0,comb1,comb2,mass_rate_density.
void save_tail_samples_csv(const Worldline& w, double tau, double e,
                           const std::string& path, int samples = 64,
                           double min_gap = 1e-6, double max_gap = 1.0);

}  // namespace edtail
