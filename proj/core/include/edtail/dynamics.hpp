#pragma once

#include <string>
#include <vector>

#include "edtail/geometry.hpp"
#include "edtail/self_force.hpp"
#include "edtail/worldline.hpp"

// Forward integration of the history-dependent equation of motion with
// dynamical inertial mass, under a windowed external field.

namespace edtail {

/// External field: none, or a constant field strength active on a proper
/// time window.
struct ExternalField {
    enum class Kind { None, Constant };
    Kind kind = Kind::None;
    FieldStrength f;
    double tau_on = 0.0;
    double tau_off = 0.0;

    static ExternalField none() { return {}; }
    static ExternalField constant(const FieldStrength& f, double tau_on,
                                  double tau_off);
    /// Field strength seen at proper time tau (zero outside the window).
    FieldStrength at(double tau) const;
};

struct ParticleState {
    double tau = 0.0;
    MVec3 z, u;
    double m = 0.0;  // dynamical inertial mass
    MVec3 p_part;    // dressed particle momentum (filled by the ledger)
};

/// Per-node integrator diagnostics.
struct StepDiagnostics {
    MVec3 self_force;
    double mass_rate = 0.0;
    double quad_error = 0.0;
};

struct DynamicsConfig {
    double e = 1.0;
    double m0 = 1.0;
    double h = 1e-3;
    double tau_end = 1.0;
    double quad_tol = 1e-7;
    bool self_force_on = true;
    PrehistoryPolicy prehistory = PrehistoryPolicy::truncate_at(0.0);
    ExternalField external;
    MVec3 z0{0.0, 0.0, 0.0};
    MVec3 u0{1.0, 0.0, 0.0};
};

struct SimulationTrace {
    std::vector<ParticleState> nodes;
    std::vector<StepDiagnostics> diagnostics;
    double h = 0.0;
    double e = 0.0;
    PrehistoryPolicy prehistory;
    ExternalField external;
    std::string config_hash;
    // Set when integration stopped early on a numerical failure; the nodes
    // up to the failure are the last-good trace.
    bool failed = false;
    std::string failure;

    /// Trace as an evaluable worldline (past asymptote per the prehistory
    /// policy: static when including the asymptote, none when truncated).
    TabulatedWorldline to_worldline() const;

    /// Trace CSV: tau,z0,z1,z2,u0,u1,u2,m,F_self0,F_self1,F_self2,mdot,quad_err.
    void save_csv(const std::string& path) const;
};

/// Thrown when the step controller or mass positivity check fails; maps to
/// the numerical-failure exit code.
struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Heun predictor-corrector with the acceleration-proportional part of the
/// self-force solved implicitly each stage:
///   (m - counterterm_coefficient) a = F_history + series + F_ext.
SimulationTrace simulate(const DynamicsConfig& cfg);

struct AccelFit {
    double value = 0.0;          // least-squares mean of |a| over the window
    double max_deviation = 0.0;  // max |a_i - value| over the window
};

/// Fit of the proper acceleration magnitude sqrt(mdot(a,a)) over a window;
/// a at nodes by centered differences of u. Throws if the window holds
/// fewer than 10 nodes.
AccelFit fit_effective_acceleration(const SimulationTrace& trace, double tau_a,
                                    double tau_b);

}  // namespace edtail
