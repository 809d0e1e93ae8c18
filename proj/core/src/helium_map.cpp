#include "edtail/helium_map.hpp"

#include <cmath>
#include <stdexcept>

namespace edtail {

double FilmParameters::c_eff() const { return std::sqrt(kappa / m_atom); }

void FilmParameters::validate() const {
    if (!(kappa > 0.0 && m_atom > 0.0 && rho_bar > 0.0 && hbar > 0.0))
        throw std::invalid_argument("FilmParameters: all parameters must be positive");
}

EmState film_to_em(const FilmState& fs, const FilmParameters& p) {
    p.validate();
    const double c = p.c_eff();
    const double scale = p.hbar / p.m_atom;
    EmState out;
    out.f = {-fs.v2, fs.v1, -c * fs.rho / p.rho_bar};
    out.sources = {scale * fs.rho_v, scale * fs.jv1, scale * fs.jv2, c, scale};
    return out;
}

FilmState em_to_film(const FieldStrength& f, const EmSources& sources,
                     const FilmParameters& p) {
    p.validate();
    const double c = p.c_eff();
    const double scale = p.hbar / p.m_atom;
    FilmState fs;
    fs.v1 = f.e2;
    fs.v2 = -f.e1;
    fs.rho = -f.h * p.rho_bar / c;
    fs.rho_v = sources.charge_density / scale;
    fs.jv1 = sources.j1 / scale;
    fs.jv2 = sources.j2 / scale;
    return fs;
}

double vorticity_to_charge(int q_v, const FilmParameters& p, bool* warned) {
    p.validate();
    if (warned) *warned = q_v != 0 && q_v != 1 && q_v != -1;
    return p.hbar / p.m_atom * q_v;
}

}  // namespace edtail
