#pragma once

#include <string>
#include <vector>

#include "edtail/dynamics.hpp"
#include "edtail/geometry.hpp"
#include "edtail/self_force.hpp"
#include "edtail/worldline.hpp"

// Radiative energy-momentum and angular momentum, dressed particle
// momentum, and balance-equation residuals. The individually divergent
// "bound" (half-sum) quantities are never computed; only the documented
// finite combinations appear here.

namespace edtail {

/// Inner paired integrand of the radiative quantities at emission offset
/// delta: g(tau1 - delta) - g(tau1 + delta), where g is the tail Lorentz
/// force integrand. The e^2 a / (2 delta) divergences cancel pointwise.
MVec3 paired_tail_integrand(const Worldline& w, double tau1, double delta,
                            double e);

/// p_rad = -(1/2) Int_{-inf}^{tau} dtau1 [F_ret(tau1) - F_adv(tau1)], with
/// the inner retarded/advanced integrals paired at equal offsets so the
/// divergences cancel at quadrature nodes; one-sided leftovers are regular
/// and integrated directly. The advanced domain ends at the observation
/// time tau.
MVec3 radiated_momentum(const Worldline& w, double tau, double e,
                        const PrehistoryPolicy& policy, double quad_tol = 1e-7);

/// Torque analog with the same pairing: the inner force difference is
/// wedged with z(tau1) before the outer integral.
AngularMomentum2 radiated_angular_momentum(const Worldline& w, double tau,
                                           double e,
                                           const PrehistoryPolicy& policy,
                                           double quad_tol = 1e-7);

/// p_part = m u(tau) + (e^2/2) Int ds [u(s) - u(tau)] / sqrt(-(q.q)).
/// The integrand is finite at coincidence with limit -a(tau). Throws
/// domain_error if an included asymptote has a velocity different from
/// u(tau) (the integral then diverges logarithmically).
MVec3 dressed_momentum(const Worldline& w, double tau, double e, double m,
                       const PrehistoryPolicy& policy, double quad_tol = 1e-9);

struct LedgerReport {
    double tau = 0.0;
    MVec3 p_rad;
    AngularMomentum2 m_rad;
    MVec3 p_part;
    double mass = 0.0;
    MVec3 balance_p;            // d/dtau (p_part + p_rad) - F_ext
    AngularMomentum2 balance_m; // d/dtau (z ^ p_part + M_rad) - z ^ F_ext
    double quad_error = 0.0;
};

/// Balance residuals at interior sample nodes of a completed trace,
/// by centered differencing of the total momentum over one step. At most
/// max_samples nodes are evaluated (the ledger integrals are quadratic in
/// history length). Throws if the trace has fewer than 3 nodes.
/// with_angular = false skips the radiated-angular-momentum double integral
/// (the dominant cost) and reports balance_m relative to the particle term
/// alone; use it when only the momentum balance is needed.
std::vector<LedgerReport> balance_residuals(const SimulationTrace& trace,
                                            std::size_t max_samples = 8,
                                            double quad_tol = 1e-7,
                                            bool with_angular = true);

/// Ledger CSV: tau,p_rad0,p_rad1,p_rad2,p_part0,p_part1,p_part2,mass,
/// Mrad01,Mrad02,Mrad12,bal_p0,bal_p1,bal_p2.
void save_ledger_csv(const std::vector<LedgerReport>& reports,
                     const std::string& path);

}  // namespace edtail
