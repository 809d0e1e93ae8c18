#pragma once

#include <functional>

#include "edtail/geometry.hpp"
#include "edtail/worldline.hpp"

// Retarded and advanced potentials and field strengths as history
// integrals, their closed forms for static and uniform motion, and a
// finite-difference Maxwell-residual checker.
//
// Source convention: box A = -2 pi j, so the static potential is exactly
// A^0 = e ln r. The potential history integral diverges logarithmically at
// the far end; it is regularized by the same antiderivative convention the
// static closed form uses, which leaves fields unchanged.

namespace edtail {

enum class Direction { Retarded, Advanced };

struct FieldQuery {
    MVec3 x;
    double charge = 1.0;
    Direction direction = Direction::Retarded;
    double quad_tol = 1e-9;
};

/// Contravariant potential A^mu at the query point.
MVec3 potential(const Worldline& w, const FieldQuery& q);

/// Field strength at the query point by history quadrature, with the
/// pre-asymptote segment folded in by closed form.
FieldStrength field(const Worldline& w, const FieldQuery& q);

struct FieldSample {
    FieldStrength f;
    double quad_error = 0.0;
};

FieldSample field_with_error(const Worldline& w, const FieldQuery& q);

/// Exact retarded field of a uniformly moving charge, e (u ^ K) / r_ret^2.
FieldStrength field_uniform_closed(const MVec3& z0, const MVec3& u, double e,
                                   const MVec3& x);

/// Field of a charge that sat at the origin for t < 0 only:
/// F_{i0} = e (x^i / r^2) (1 - sqrt(1 - r^2 / (x^0)^2)). Requires x0 > r.
FieldStrength field_static_segment(double e, const MVec3& x);

/// Closed-form field of the trajectory segment tau in (-inf, tau_end] of a
/// straight line through z_end with unit velocity u (the general form of
/// field_static_segment). Used for pre-asymptote contributions in both
/// light-cone directions. Pass end_on_cone when z_end is the light-cone
/// root of x: -Ks.Ks then vanishes identically and the caller's statement
/// of that fact beats the root finder's residual.
FieldStrength line_segment_field(const MVec3& z_end, const MVec3& u, double e,
                                 const MVec3& x, Direction dir,
                                 bool end_on_cone = false);

struct MaxwellResidual {
    double faraday = 0.0;
    double gauss = 0.0;
    double ampere1 = 0.0;
    double ampere2 = 0.0;
    double h = 0.0;
};

/// Central-difference residuals of the source-free Maxwell equations for an
/// arbitrary field map.
MaxwellResidual maxwell_residuals(const std::function<FieldStrength(const MVec3&)>& f,
                                  const MVec3& x, double h);

/// Same, for the quadrature field of a worldline.
MaxwellResidual maxwell_residuals(const Worldline& w, const MVec3& x, double e,
                                  double h, double quad_tol = 1e-9);

}  // namespace edtail
