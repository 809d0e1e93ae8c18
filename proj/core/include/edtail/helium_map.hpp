#pragma once

#include "edtail/geometry.hpp"

// Dictionary between 2+1 electrodynamics and a thin superfluid He-4 film:
// phonon velocity/density map to the field strength, vortices to charges.
// The electrodynamic side is nondimensional with c = 1; the scale factors
// needed to restore physical units travel alongside the converted values.

namespace edtail {

struct FilmParameters {
    double kappa = 1.0;    // compressibility
    double m_atom = 1.0;   // He-4 atom mass
    double rho_bar = 1.0;  // average fluid density
    double hbar = 1.0;

    double c_eff() const;  // sqrt(kappa / m_atom)
    void validate() const; // throws invalid_argument unless all positive
};

struct FilmState {
    double v1 = 0.0, v2 = 0.0;  // phonon velocity field
    double rho = 0.0;           // phonon density
    double rho_v = 0.0;         // vortex density
    double jv1 = 0.0, jv2 = 0.0;  // vortex current
};

/// Charge/current densities on the electrodynamic side, with the unit
/// scale factors used by the map.
struct EmSources {
    double charge_density = 0.0;
    double j1 = 0.0, j2 = 0.0;
    double c_eff = 1.0;         // film speed of sound = mapped speed of light
    double charge_scale = 1.0;  // hbar / m_atom
};

struct EmState {
    FieldStrength f;
    EmSources sources;
};

/// E1 = -v2, E2 = v1, H = -c_eff rho / rho_bar; vortex density and current
/// map to charge density and current with scale hbar / m_atom.
EmState film_to_em(const FilmState& fs, const FilmParameters& p);

/// Exact inverse of film_to_em.
FilmState em_to_film(const FieldStrength& f, const EmSources& sources,
                     const FilmParameters& p);

/// Effective charge of a vortex of winding number q_v: e = (hbar/m_atom) q_v.
/// Winding numbers other than 0, +-1 are allowed but flagged (warned), since
/// only minimal vortices are thermodynamically stable.
double vorticity_to_charge(int q_v, const FilmParameters& p,
                           bool* warned = nullptr);

}  // namespace edtail
