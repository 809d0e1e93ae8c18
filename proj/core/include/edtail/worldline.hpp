#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "edtail/geometry.hpp"

// Trajectory families, state evaluation, and light-cone root finding.

namespace edtail {

/// Snapshot of a trajectory at proper time tau: position, velocity,
/// acceleration, and jerk.
struct WorldlineState {
    double tau = 0.0;
    MVec3 z, u, a, adot;
};

enum class AsymptoteKind { None, Static, Uniform };

/// Declared behavior of a trajectory before tau_pre (or after tau_post for
/// the future side). History integrals from -inf split at tau_pre and use
/// closed forms on the asymptotic segment.
struct Asymptote {
    AsymptoteKind kind = AsymptoteKind::None;
    double tau_split = 0.0;
};

class Worldline {
public:
    virtual ~Worldline() = default;

    virtual WorldlineState eval(double tau) const = 0;

    /// Past asymptote; None means history integrals must be truncated.
    virtual Asymptote past_asymptote() const { return {}; }
    /// Future asymptote; needed only for advanced-direction integrals.
    virtual Asymptote future_asymptote() const { return {}; }

    /// Largest tau for which eval is defined.
    virtual double horizon() const { return std::numeric_limits<double>::infinity(); }
    /// Smallest tau for which eval is defined.
    virtual double earliest() const { return -std::numeric_limits<double>::infinity(); }
};

/// z(tau) = (tau + t0, x0, y0).
class StaticWorldline final : public Worldline {
public:
    explicit StaticWorldline(double x0 = 0.0, double y0 = 0.0, double t0 = 0.0)
        : x0_(x0), y0_(y0), t0_(t0) {}
    WorldlineState eval(double tau) const override;
    Asymptote past_asymptote() const override { return {AsymptoteKind::Static, 0.0}; }
    Asymptote future_asymptote() const override { return {AsymptoteKind::Static, 0.0}; }

private:
    double x0_, y0_, t0_;
};

/// z(tau) = z0 + u * tau with constant unit timelike u.
class UniformWorldline final : public Worldline {
public:
    UniformWorldline(const MVec3& z0, const MVec3& u);
    WorldlineState eval(double tau) const override;
    Asymptote past_asymptote() const override { return {AsymptoteKind::Uniform, 0.0}; }
    Asymptote future_asymptote() const override { return {AsymptoteKind::Uniform, 0.0}; }

private:
    MVec3 z0_, u_;
};

/// Constant proper acceleration in the (t, x) plane:
/// z = (sinh(a tau)/a, (cosh(a tau)-1)/a, 0). With static_prehistory the
/// particle instead sits at the origin for tau < 0 (C1 gluing at tau = 0).
class HyperbolicWorldline final : public Worldline {
public:
    explicit HyperbolicWorldline(double accel, bool static_prehistory = false);
    WorldlineState eval(double tau) const override;
    Asymptote past_asymptote() const override;

private:
    double a_;
    bool static_pre_;
};

/// z = (g tau, R cos(w g tau + phi0), R sin(w g tau + phi0)),
/// g = 1/sqrt(1 - R^2 w^2). Benchmark trajectory with nonzero jerk.
class CircularWorldline final : public Worldline {
public:
    CircularWorldline(double radius, double omega, double phi0 = 0.0);
    WorldlineState eval(double tau) const override;

private:
    double r_, w_, phi0_, gamma_;
};

/// Node-based trajectory produced by the dynamics integrator. Cubic Hermite
/// interpolation on stored (z, u) pairs; acceleration from the Hermite
/// second derivative, jerk from centered differences of node accelerations.
/// Append-only while integrating, immutable for readers.
class TabulatedWorldline final : public Worldline {
public:
    TabulatedWorldline() = default;
    explicit TabulatedWorldline(Asymptote past) : past_(past) {}

    void append(double tau, const MVec3& z, const MVec3& u);
    /// Drop the newest node (integrator discards a provisional prediction).
    void pop_back();
    std::size_t size() const { return tau_.size(); }

    WorldlineState eval(double tau) const override;
    Asymptote past_asymptote() const override { return past_; }
    void set_past_asymptote(Asymptote a) { past_ = a; }
    double horizon() const override;
    double earliest() const override;

    /// CSV with header tau,z0,z1,z2,u0,u1,u2 at 17 significant digits.
    void save_csv(const std::string& path) const;
    static TabulatedWorldline load_csv(const std::string& path);

private:
    std::vector<double> tau_;
    std::vector<MVec3> z_, u_;
    Asymptote past_{};
    std::size_t segment_for(double tau) const;
};

/// Root of (K.K) = 0 on the past or future light cone of x.
struct LightConeRoot {
    double tau = 0.0;
    /// Set when x lies on the worldline itself (r = 0 coincidence).
    bool on_worldline = false;
};

/// Proper time where the worldline punctures the past light cone of x.
/// Residual |(K.K)| < 1e-12 * (1 + |x|^2). Throws if no root exists inside
/// the trajectory domain.
LightConeRoot retarded_time(const Worldline& w, const MVec3& x);

/// Future light cone puncture; always tau_adv >= tau_ret.
LightConeRoot advanced_time(const Worldline& w, const MVec3& x);

/// Separation data between two points on one worldline:
/// q = z(tau_field) - z(s), norm = sqrt(-(q.q)), r_s = -(q.u(s)).
/// Short gaps are evaluated by integrating the velocity over [s, tau_field]
/// so that the result stays accurate relative to |q|, not |z|.
struct Separation {
    MVec3 q;
    double norm = 0.0;
    double r_s = 0.0;
};

Separation separation(const Worldline& w, double tau_field, double s);

}  // namespace edtail
