#include "edtail/worldline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edtail/quadrature.hpp"

namespace edtail {

WorldlineState StaticWorldline::eval(double tau) const {
    return {tau, {tau + t0_, x0_, y0_}, {1.0, 0.0, 0.0}, {}, {}};
}

UniformWorldline::UniformWorldline(const MVec3& z0, const MVec3& u) : z0_(z0), u_(u) {
    if (std::abs(mdot(u, u) + 1.0) > 1e-9)
        throw std::invalid_argument("UniformWorldline: velocity not normalized");
}

WorldlineState UniformWorldline::eval(double tau) const {
    return {tau, z0_ + u_ * tau, u_, {}, {}};
}

HyperbolicWorldline::HyperbolicWorldline(double accel, bool static_prehistory)
    : a_(accel), static_pre_(static_prehistory) {
    if (accel <= 0.0) throw std::invalid_argument("HyperbolicWorldline: accel must be positive");
}

WorldlineState HyperbolicWorldline::eval(double tau) const {
    if (static_pre_ && tau < 0.0) return {tau, {tau, 0.0, 0.0}, {1.0, 0.0, 0.0}, {}, {}};
    const double sh = std::sinh(a_ * tau), ch = std::cosh(a_ * tau);
    return {tau,
            {sh / a_, (ch - 1.0) / a_, 0.0},
            {ch, sh, 0.0},
            {a_ * sh, a_ * ch, 0.0},
            {a_ * a_ * ch, a_ * a_ * sh, 0.0}};
}

Asymptote HyperbolicWorldline::past_asymptote() const {
    if (static_pre_) return {AsymptoteKind::Static, 0.0};
    return {};
}

CircularWorldline::CircularWorldline(double radius, double omega, double phi0)
    : r_(radius), w_(omega), phi0_(phi0) {
    const double v = radius * omega;
    if (std::abs(v) >= 1.0)
        throw std::invalid_argument("CircularWorldline: R*omega must be subluminal");
    gamma_ = 1.0 / std::sqrt(1.0 - v * v);
}

WorldlineState CircularWorldline::eval(double tau) const {
    const double ph = w_ * gamma_ * tau + phi0_;
    const double c = std::cos(ph), s = std::sin(ph);
    const double wg = w_ * gamma_;
    return {tau,
            {gamma_ * tau, r_ * c, r_ * s},
            {gamma_, -r_ * wg * s, r_ * wg * c},
            {0.0, -r_ * wg * wg * c, -r_ * wg * wg * s},
            {0.0, r_ * wg * wg * wg * s, -r_ * wg * wg * wg * c}};
}

// ---------------------------------------------------------------------------
// TabulatedWorldline

void TabulatedWorldline::append(double tau, const MVec3& z, const MVec3& u) {
    if (!tau_.empty() && tau <= tau_.back())
        throw std::invalid_argument("TabulatedWorldline::append: tau must increase");
    tau_.push_back(tau);
    z_.push_back(z);
    u_.push_back(u);
}

void TabulatedWorldline::pop_back() {
    if (tau_.empty()) throw std::domain_error("TabulatedWorldline::pop_back: empty");
    tau_.pop_back();
    z_.pop_back();
    u_.pop_back();
}

double TabulatedWorldline::horizon() const {
    if (tau_.empty()) throw std::domain_error("TabulatedWorldline: empty");
    return tau_.back();
}

double TabulatedWorldline::earliest() const {
    if (tau_.empty()) throw std::domain_error("TabulatedWorldline: empty");
    if (past_.kind != AsymptoteKind::None)
        return -std::numeric_limits<double>::infinity();
    return tau_.front();
}

std::size_t TabulatedWorldline::segment_for(double tau) const {
    auto it = std::upper_bound(tau_.begin(), tau_.end(), tau);
    std::size_t k = static_cast<std::size_t>(it - tau_.begin());
    if (k == 0) k = 1;
    if (k >= tau_.size()) k = tau_.size() - 1;
    return k - 1;  // segment [k-1, k]
}

WorldlineState TabulatedWorldline::eval(double tau) const {
    if (tau_.empty()) throw std::domain_error("TabulatedWorldline: empty");
    const double eps = 1e-12 * (1.0 + std::abs(tau));
    if (tau > tau_.back() + eps)
        throw std::domain_error("TabulatedWorldline: tau beyond horizon");
    if (tau < tau_.front() - eps) {
        if (past_.kind == AsymptoteKind::Static) {
            const MVec3& z0 = z_.front();
            const double dt = tau - tau_.front();
            return {tau, {z0.t + dt, z0.x, z0.y}, {1.0, 0.0, 0.0}, {}, {}};
        }
        if (past_.kind == AsymptoteKind::Uniform) {
            const double dt = tau - tau_.front();
            return {tau, z_.front() + u_.front() * dt, u_.front(), {}, {}};
        }
        throw std::domain_error("TabulatedWorldline: tau before first node");
    }
    tau = std::clamp(tau, tau_.front(), tau_.back());
    if (tau_.size() == 1) return {tau, z_[0], u_[0], {}, {}};

    const std::size_t k = segment_for(tau);
    const double h = tau_[k + 1] - tau_[k];
    const double t = (tau - tau_[k]) / h;
    const MVec3 &z0 = z_[k], &z1 = z_[k + 1], &u0 = u_[k], &u1 = u_[k + 1];

    // Hermite basis derivatives (the h00/d00/s00 weights drop out below:
    // with the position taken relative to z0 the z0 coefficients vanish,
    // since h00 + h01 = 1, d00 + d01 = 0 and s00 + s01 = 0).
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    const double d10 = (3 * t - 1) * (t - 1);
    const double d01 = -6 * t * (t - 1), d11 = t * (3 * t - 2);
    const double s10 = 6 * t - 4, s01 = 6 - 12 * t, s11 = 6 * t - 2;

    // Interpolate in the instantaneous rest frame of the segment's start
    // node. In lab coordinates at rapidity chi every node component is
    // O(cosh chi), so the O(h^2)..O(h^3) interpolation error of (a, u) is a
    // generic vector of that scale; contractions such as u(tau1).a(tau2) in
    // the history integrands then pick it up multiplied by another boost
    // factor, and the integrand noise grows like cosh^2. Boosted to the
    // local frame the node data -- and hence the interpolation error -- is
    // O(1), and after boosting back the error is a near-lightcone-aligned
    // vector whose contraction with any nearby velocity stays small.
    const double sh = std::hypot(u0.x, u0.y);  // sinh of the u0 rapidity
    const double nx = sh > 0.0 ? u0.x / sh : 1.0;
    const double ny = sh > 0.0 ? u0.y / sh : 0.0;
    const double ch = u0.t;
    const double chm1 = sh * sh / (ch + 1.0);  // cosh - 1, no cancellation
    const auto boost_in = [&](const MVec3& v) -> MVec3 {
        const double np = nx * v.x + ny * v.y;
        const double add = chm1 * np - sh * v.t;
        return {ch * v.t - sh * np, v.x + nx * add, v.y + ny * add};
    };
    const auto boost_out = [&](const MVec3& v) -> MVec3 {
        const double np = nx * v.x + ny * v.y;
        const double add = chm1 * np + sh * v.t;
        return {ch * v.t + sh * np, v.x + nx * add, v.y + ny * add};
    };
    const MVec3 w1 = boost_in(z1 - z0);  // z1 relative to z0, local frame
    const MVec3 v0{1.0, 0.0, 0.0};       // u0 in its own frame
    const MVec3 v1 = boost_in(u1);

    const MVec3 zf = v0 * (h10 * h) + w1 * h01 + v1 * (h11 * h);
    const MVec3 uf = v0 * d10 + w1 * (d01 / h) + v1 * d11;
    const MVec3 af = v0 * (s10 / h) + w1 * (s01 / (h * h)) + v1 * (s11 / h);
    const MVec3 z = z0 + boost_out(zf);
    const MVec3 u = boost_out(uf);
    const MVec3 a = boost_out(af);

    // Jerk from centered differences of node velocities (one-sided at ends).
    auto node_acc = [&](std::size_t i) -> MVec3 {
        if (i == 0) return (u_[1] - u_[0]) / (tau_[1] - tau_[0]);
        if (i + 1 == tau_.size())
            return (u_[i] - u_[i - 1]) / (tau_[i] - tau_[i - 1]);
        return (u_[i + 1] - u_[i - 1]) / (tau_[i + 1] - tau_[i - 1]);
    };
    MVec3 ad{};
    if (tau_.size() >= 3) {
        const std::size_t i0 = k, i1 = k + 1;
        MVec3 ja, jb;
        if (i0 == 0)
            ja = (node_acc(1) - node_acc(0)) / (tau_[1] - tau_[0]);
        else
            ja = (node_acc(i0 + 1) - node_acc(i0 - 1)) / (tau_[i0 + 1] - tau_[i0 - 1]);
        if (i1 + 1 == tau_.size())
            jb = (node_acc(i1) - node_acc(i1 - 1)) / (tau_[i1] - tau_[i1 - 1]);
        else
            jb = (node_acc(i1 + 1) - node_acc(i1 - 1)) / (tau_[i1 + 1] - tau_[i1 - 1]);
        ad = ja * (1.0 - t) + jb * t;
    }
    return {tau, z, u, a, ad};
}

void TabulatedWorldline::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "tau,z0,z1,z2,u0,u1,u2\n";
    char buf[256];
    for (std::size_t i = 0; i < tau_.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", tau_[i],
                      z_[i].t, z_[i].x, z_[i].y, u_[i].t, u_[i].x, u_[i].y);
        out << buf;
    }
}

TabulatedWorldline TabulatedWorldline::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("tau,z0,z1,z2,u0,u1,u2", 0) != 0)
        throw std::runtime_error(path + ": missing worldline CSV header");
    TabulatedWorldline w;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double v[7];
        char comma;
        for (int i = 0; i < 7; ++i) {
            if (!(ss >> v[i])) throw std::runtime_error(path + ": bad row: " + line);
            if (i < 6) ss >> comma;
        }
        w.append(v[0], {v[1], v[2], v[3]}, {v[4], v[5], v[6]});
    }
    return w;
}

// ---------------------------------------------------------------------------
// Light-cone root finding

namespace {

double cone_residual(const Worldline& w, const MVec3& x, double tau) {
    const MVec3 K = x - w.eval(tau).z;
    return mdot(K, K);
}

// Solve z0(tau) = x0 (z0 is strictly increasing in tau).
double simultaneity_time(const Worldline& w, const MVec3& x) {
    double lo = w.earliest(), hi = w.horizon();
    double tau = std::clamp(x.t, lo, hi);
    for (int i = 0; i < 100; ++i) {
        const WorldlineState s = w.eval(tau);
        const double f = s.z.t - x.t;
        if (std::abs(f) < 1e-14 * (1.0 + std::abs(x.t))) return tau;
        double step = -f / std::max(s.u.t, 1.0);
        double next = std::clamp(tau + step, lo, hi);
        if (next == tau) return tau;
        tau = next;
    }
    return tau;
}

// Safeguarded Newton on g(tau) = (K.K) within a bracket where
// g(tau_in) < 0 < g(tau_out) is known (signs given by `rising`).
double polish_root(const Worldline& w, const MVec3& x, double lo, double hi,
                   double tol) {
    double tau = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        const WorldlineState s = w.eval(tau);
        const MVec3 K = x - s.z;
        const double g = mdot(K, K);
        if (std::abs(g) < tol) return tau;
        if (g < 0.0)
            lo = tau;
        else
            hi = tau;
        const double dg = -2.0 * mdot(K, s.u);
        double next = tau;
        if (dg != 0.0) next = tau - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == tau) next = 0.5 * (lo + hi);
        tau = next;
    }
    return tau;
}

}  // namespace

LightConeRoot retarded_time(const Worldline& w, const MVec3& x) {
    const double tol = 1e-12 * (1.0 + x.t * x.t + x.x * x.x + x.y * x.y);
    double hi = simultaneity_time(w, x);
    {
        const WorldlineState s = w.eval(hi);
        const MVec3 K = x - s.z;
        if (std::abs(mdot(K, K)) < tol && std::abs(K.t) < std::sqrt(tol))
            return {hi, true};
        if (mdot(K, K) < 0.0 && K.t < 0.0)
            throw std::domain_error("retarded_time: no root before trajectory horizon");
    }
    // March into the past until K turns timelike; step from the light-travel
    // estimate in the current frame.
    double lo = hi;
    double step = std::max((x - w.eval(hi).z).spatial_norm(), 1e-3) /
                  std::max(w.eval(hi).u.t, 1.0);
    const double lo_lim = w.earliest();
    for (int i = 0; i < 200; ++i) {
        double next = std::max(lo - step, lo_lim);
        if (next == lo)
            throw std::domain_error("retarded_time: no root within trajectory domain");
        if (cone_residual(w, x, next) < 0.0) {
            lo = next;
            break;
        }
        hi = next;
        lo = next;
        step *= 2.0;
        if (next == lo_lim)
            throw std::domain_error("retarded_time: no root within trajectory domain");
    }
    return {polish_root(w, x, lo, hi, tol), false};
}

LightConeRoot advanced_time(const Worldline& w, const MVec3& x) {
    const double tol = 1e-12 * (1.0 + x.t * x.t + x.x * x.x + x.y * x.y);
    double lo = simultaneity_time(w, x);
    {
        const WorldlineState s = w.eval(lo);
        const MVec3 K = x - s.z;
        if (std::abs(mdot(K, K)) < tol && std::abs(K.t) < std::sqrt(tol))
            return {lo, true};
        if (mdot(K, K) < 0.0 && K.t > 0.0)
            throw std::domain_error("advanced_time: no root after trajectory start");
    }
    double hi = lo;
    double step = std::max((x - w.eval(lo).z).spatial_norm(), 1e-3) /
                  std::max(w.eval(lo).u.t, 1.0);
    const double hi_lim = w.horizon();
    for (int i = 0; i < 200; ++i) {
        double next = std::min(hi + step, hi_lim);
        if (next == hi)
            throw std::domain_error("advanced_time: no root within trajectory domain");
        if (cone_residual(w, x, next) < 0.0) {
            hi = next;
            break;
        }
        lo = next;
        hi = next;
        step *= 2.0;
        if (next == hi_lim)
            throw std::domain_error("advanced_time: no root within trajectory domain");
    }
    // Same polishing with the bracket orientation flipped: g < 0 at hi side.
    double a = lo, b = hi;
    double tau = 0.5 * (a + b);
    for (int i = 0; i < 200; ++i) {
        const WorldlineState s = w.eval(tau);
        const MVec3 K = x - s.z;
        const double g = mdot(K, K);
        if (std::abs(g) < tol) return {tau, false};
        if (g < 0.0)
            b = tau;
        else
            a = tau;
        const double dg = -2.0 * mdot(K, s.u);
        double next = (dg != 0.0) ? tau - g / dg : tau;
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (next == tau) next = 0.5 * (a + b);
        tau = next;
    }
    return {tau, false};
}

Separation separation(const Worldline& w, double tau_field, double s) {
    if (s >= tau_field)
        throw std::invalid_argument("separation: emission time must precede field time");
    const WorldlineState ss = w.eval(s);
    MVec3 q;
    const double gap = tau_field - s;
    // Short gaps: differencing absolute positions would leave a relative
    // error of ~1e-16 |z| / |q| in q (amplified further by the q.q
    // cancellation), so the increment is integrated from the velocity.
    // A degree-5 rule suffices in the mid band (error ~ gap^7 |u^(6)|);
    // the degree-13 rule is reserved for the genuinely tiny gaps that
    // ledger probes reach.
    if (gap > 0.0 && gap < 5e-3) {
        q = quad::gl7<MVec3>([&](double t) { return w.eval(t).u; }, s, tau_field);
    } else if (gap < 5e-2) {
        q = quad::gl3<MVec3>([&](double t) { return w.eval(t).u; }, s, tau_field);
    } else {
        q = w.eval(tau_field).z - ss.z;
    }
    const double qq = mdot(q, q);
    if (qq > 1e-10 * (1.0 + q.enorm() * q.enorm()))
        throw std::runtime_error("separation: spacelike separation on one worldline");
    Separation out;
    out.q = q;
    out.norm = std::sqrt(std::max(0.0, -qq));
    out.r_s = -mdot(q, ss.u);
    return out;
}

}  // namespace edtail
