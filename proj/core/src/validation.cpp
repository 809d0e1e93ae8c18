#include "edtail/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "edtail/config.hpp"
#include "edtail/dynamics.hpp"
#include "edtail/field_eval.hpp"
#include "edtail/helium_map.hpp"
#include "edtail/quadrature.hpp"
#include "edtail/radiation_ledger.hpp"
#include "edtail/runner.hpp"
#include "edtail/self_force.hpp"
#include "edtail/worldline.hpp"

namespace edtail {

namespace {

using Results = std::vector<CheckResult>;

void add(Results& r, int crit, const std::string& name, double measured,
         double expected, double tol, const std::string& prov) {
    r.push_back({crit, name, measured, expected, tol,
                 std::abs(measured - expected) <= tol, prov});
}

// For "measured must be below bound" style checks.
void add_bound(Results& r, int crit, const std::string& name, double measured,
               double bound, const std::string& prov) {
    r.push_back({crit, name, measured, 0.0, bound, measured <= bound, prov});
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// Least-squares slope of log|y| against log(x).
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --- criterion 1: static potential -------------------------------------

Results criterion1() {
    Results r;
    const auto t0 = std::chrono::steady_clock::now();
    StaticWorldline w;
    for (double radius : {0.5, 1.0, 2.0, 5.0}) {
        FieldQuery q{{0.0, radius, 0.0}, 1.0, Direction::Retarded, 1e-10};
        const double a0 = potential(w, q).t;
        const double exact = std::log(radius);
        std::ostringstream name;
        name << "A0 at r=" << radius;
        if (radius == 1.0)
            add(r, 1, name.str(), a0, 0.0, 1e-10, "paper");
        else
            add(r, 1, name.str(), a0 / exact, 1.0, 1e-8, "paper");
    }
    add_bound(r, 1, "runtime seconds", seconds_since(t0), 1.0, "derived");
    return r;
}

// --- criterion 2: static field on a grid --------------------------------

Results criterion2() {
    Results r;
    const auto t0 = std::chrono::steady_clock::now();
    StaticWorldline w;
    double worst_closed = 0.0, worst_quad = 0.0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            const double x = -1.0 + 0.2 * i;
            const double y = -0.9 + 0.2 * j;  // offset keeps the origin off-grid
            const MVec3 p{3.0, x, y};
            const double rr = p.spatial_norm();
            const FieldStrength exact{x / (rr * rr), y / (rr * rr), 0.0};
            const FieldStrength closed =
                field_uniform_closed({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 1.0, p);
            const FieldStrength quad =
                field(w, {p, 1.0, Direction::Retarded, 1e-9});
            worst_closed =
                std::max(worst_closed, (closed - exact).enorm() / exact.enorm());
            worst_quad =
                std::max(worst_quad, (quad - exact).enorm() / exact.enorm());
        }
    add_bound(r, 2, "closed-form max rel error", worst_closed, 1e-9, "paper");
    add_bound(r, 2, "quadrature max rel error", worst_quad, 1e-6, "paper");
    add_bound(r, 2, "runtime seconds", seconds_since(t0), 5.0, "derived");
    return r;
}

// --- criterion 3: uniform motion ----------------------------------------

Results criterion3() {
    Results r;
    const auto t0 = std::chrono::steady_clock::now();
    const MVec3 u{std::sqrt(1.0 + 0.09 + 0.04), 0.3, -0.2};
    UniformWorldline w({0.0, 0.0, 0.0}, u);
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const MVec3 p{4.0 + coord(rng), coord(rng), coord(rng)};
        const FieldStrength closed = field_uniform_closed({0, 0, 0}, u, 1.0, p);
        const FieldStrength quad = field(w, {p, 1.0, Direction::Retarded, 1e-10});
        worst = std::max(worst, (quad - closed).enorm() /
                                    std::max(1e-300, closed.enorm()));
    }
    add_bound(r, 3, "field vs closed form, 100 points", worst, 1e-8, "paper");
    const SelfForceResult sf =
        self_force(w, 0.7, 1.0, PrehistoryPolicy::include_asymptote(), 1e-10);
    add_bound(r, 3, "|self_force| on uniform", sf.force.enorm(), 1e-10, "paper");
    add_bound(r, 3, "|mass_rate| on uniform", std::abs(sf.mass_rate), 1e-10,
              "paper");
    add_bound(r, 3, "runtime seconds", seconds_since(t0), 5.0, "derived");
    return r;
}

// --- criterion 4: Coulomb law -------------------------------------------

Results criterion4() {
    Results r;
    StaticWorldline w1;
    const double e1 = 0.8, e2 = -1.3;
    for (double d : {0.5, 1.0, 2.0}) {
        const MVec3 p{6.0, d, 0.0};
        const FieldStrength f = field(w1, {p, e1, Direction::Retarded, 1e-11});
        const MVec3 force = lorentz_force(f, {1.0, 0.0, 0.0}, e2);
        std::ostringstream name;
        name << "|F| r=" << d;
        add(r, 4, name.str(), force.spatial_norm(), std::abs(e1 * e2) / d,
            1e-9 * std::abs(e1 * e2) / d, "paper");
        // Direction: radial (attractive here since e1*e2 < 0).
        std::ostringstream name2;
        name2 << "radial direction r=" << d;
        add(r, 4, name2.str(), force.x / force.spatial_norm(),
            e1 * e2 > 0 ? 1.0 : -1.0, 1e-9, "paper");
    }
    return r;
}

// --- criterion 5: hyperbolic benchmark ----------------------------------

Results criterion5() {
    Results r;
    const auto t0 = std::chrono::steady_clock::now();
    HyperbolicWorldline w(1.0);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);

    double worst_sep = 0.0;
    for (int k = 0; k < 25; ++k) {
        const double d = 1e-3 * std::pow(5e3, k / 24.0);
        const Separation s = separation(w, 5.0, 5.0 - d);
        worst_sep = std::max(
            worst_sep, std::abs(s.norm - 2.0 * std::sinh(0.5 * d)) /
                           (2.0 * std::sinh(0.5 * d)));
    }
    add_bound(r, 5, "sqrt(-(q.q)) vs 2 sinh(D/2)", worst_sep, 1e-10, "paper");

    double worst_sf = 0.0;
    for (double tau : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const WorldlineState st = w.eval(tau);
        const MVec3 exact =
            st.a * (0.5 * (1.0 - 1.0 / std::cosh(0.5 * tau)));
        const MVec3 got = self_force(w, tau, 1.0, pol, 1e-9).force;
        worst_sf = std::max(worst_sf, (got - exact).enorm() / exact.enorm());
        if (tau == 2.0) {
            const double coeff = mdot(got, st.a) / mdot(st.a, st.a);
            add(r, 5, "coefficient at tau=2", coeff, 0.175973, 1e-5, "paper");
        }
    }
    add_bound(r, 5, "self_force vs closed form", worst_sf, 1e-5, "paper");

    double worst_m = 0.0;
    for (double tau : {0.1, 0.5, 1.0, 2.0, 5.0})
        worst_m = std::max(
            worst_m, std::abs(self_force(w, tau, 1.0, pol, 1e-9).mass_rate));
    add_bound(r, 5, "|mass_rate| on hyperbola", worst_m, 1e-8, "paper");
    add_bound(r, 5, "runtime seconds", seconds_since(t0), 30.0, "derived");
    return r;
}

// --- criterion 6: coincidence limit -------------------------------------

Results criterion6() {
    Results r;
    CircularWorldline w(0.1, 1.0);
    const double tau = 0.3;
    const MVec3 limit = abraham_limit(w.eval(tau), 1.0);

    // Richardson on combined_integrand, which approaches the limit linearly.
    auto comb = [&](double d) { return combined_integrand(w, tau, tau - d, 1.0).combined; };
    const double d0 = 1e-3;
    const MVec3 extrap = comb(d0 / 4) * 2.0 - comb(d0 / 2);
    add_bound(r, 6, "Richardson combined vs Abraham",
              (extrap - limit).enorm() / limit.enorm(), 1e-4, "paper");

    std::vector<double> ds, mags;
    for (int k = 0; k < 12; ++k) {
        const double d = 1e-5 * std::pow(10.0, 2.0 * k / 11.0);  // 1e-5..1e-3
        ds.push_back(d);
        mags.push_back(force_density(w, tau, tau - d, 1.0).enorm());
    }
    const double expo = -fit_log_slope(ds, mags);
    add(r, 6, "raw 1/Delta divergence exponent", expo, 1.0, 0.05, "paper");
    return r;
}

// --- criterion 7: Maxwell residuals -------------------------------------

Results criterion7() {
    Results r;
    const MVec3 u{std::sqrt(1.25), 0.5, 0.0};
    auto uniform_f = [&](const MVec3& p) {
        return field_uniform_closed({0.0, 0.0, 0.0}, u, 1.0, p);
    };
    auto static_f = [&](const MVec3& p) {
        return field_uniform_closed({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 1.0, p);
    };
    const MVec3 probe{0.4, 1.2, -0.9};
    for (int which = 0; which < 2; ++which) {
        std::function<FieldStrength(const MVec3&)> f =
            which == 0 ? std::function<FieldStrength(const MVec3&)>(static_f)
                       : std::function<FieldStrength(const MVec3&)>(uniform_f);
        std::vector<double> hs, worst;
        for (double h : {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4, 3.125e-4}) {
            const MaxwellResidual m = maxwell_residuals(f, probe, h);
            hs.push_back(h);
            worst.push_back(std::max({std::abs(m.faraday), std::abs(m.gauss),
                                      std::abs(m.ampere1), std::abs(m.ampere2)}));
        }
        const std::string tag = which == 0 ? "static" : "uniform";
        add_bound(r, 7, tag + " final residual", worst.back(), 1e-6, "paper");
        const double order = fit_log_slope(hs, worst);
        r.push_back({7, tag + " convergence order", order, 2.0, 0.0, order >= 1.9,
                     "paper"});
    }
    return r;
}

// --- criterion 8: radiation ledger --------------------------------------

// Brute-force double quadrature with symmetric cutoff and Richardson
// extrapolation; the independent oracle for the paired scheme.
MVec3 p_rad_cutoff_oracle(const Worldline& w, double tau, double e) {
    auto with_eps = [&](double eps) {
        auto outer = [&](double t1) -> MVec3 {
            MVec3 v{};
            if (t1 - eps > 0.0)
                v += quad::integrate<MVec3>(
                         [&](double s) { return tail_force_integrand(w, t1, s, e); },
                         0.0, t1 - eps, 1e-9, 1e-11)
                         .value;
            if (t1 + eps < tau)
                v -= quad::integrate<MVec3>(
                         [&](double s) { return tail_force_integrand(w, t1, s, e); },
                         t1 + eps, tau, 1e-9, 1e-11)
                         .value;
            return v;
        };
        return quad::integrate<MVec3>(outer, 0.0, tau, 1e-8, 1e-10).value * -0.5;
    };
    const MVec3 i3 = with_eps(1e-3), i4 = with_eps(1e-4), i5 = with_eps(1e-5);
    // Error is linear in eps; two Richardson levels on the 10x ladder.
    const MVec3 r45 = (i5 * 10.0 - i4) / 9.0;
    const MVec3 r34 = (i4 * 10.0 - i3) / 9.0;
    return r45 + (r45 - r34) / 9.0;
}

Results criterion8() {
    Results r;
    HyperbolicWorldline hyp(1.0);
    // On the hyperbola the true paired difference is identically zero (the
    // density is even in tau1 - s by the boost symmetry), so boundedness is
    // asserted as an absolute bound: an unpaired -e^2 a/(2 Delta) leak would
    // reach ~5e5 at Delta = 1e-6, while the rounding floor sits near
    // ulp(1/Delta) ~ 1e-10.
    double worst_pair = 0.0;
    for (int k = 0; k < 12; ++k) {
        const double d = 1e-6 * std::pow(10.0, 3.0 * k / 11.0);  // 1e-6..1e-3
        worst_pair = std::max(worst_pair,
                              paired_tail_integrand(hyp, 1.0, d, 1.0).enorm());
    }
    add_bound(r, 8, "paired hyperbola |difference|", worst_pair, 1e-8, "paper");

    // The circular orbit has no reflection symmetry about tau1, so there the
    // paired difference tends to a finite nonzero limit and the fitted
    // growth exponent probes boundedness rather than the rounding floor.
    CircularWorldline circ(1.0, 0.5);
    std::vector<double> ds, mags;
    for (int k = 0; k < 12; ++k) {
        const double d = 1e-6 * std::pow(10.0, 3.0 * k / 11.0);
        ds.push_back(d);
        mags.push_back(paired_tail_integrand(circ, 1.0, d, 1.0).enorm());
    }
    const double expo = -fit_log_slope(ds, mags);
    r.push_back({8, "paired integrand growth exponent", expo, 0.0, 0.1,
                 expo < 0.1, "paper"});

    const MVec3 u{std::sqrt(1.0 + 0.16), 0.4, 0.0};
    UniformWorldline uw({0.0, 0.0, 0.0}, u);
    const MVec3 pu =
        radiated_momentum(uw, 1.0, 1.0, PrehistoryPolicy::include_asymptote(), 1e-9);
    add_bound(r, 8, "|p_rad| uniform", pu.enorm(), 1e-10, "paper");

    const double tau = 2.0;
    const MVec3 got =
        radiated_momentum(hyp, tau, 1.0, PrehistoryPolicy::truncate_at(0.0), 1e-8);
    const MVec3 oracle = p_rad_cutoff_oracle(hyp, tau, 1.0);
    add_bound(r, 8, "p_rad vs cutoff oracle", (got - oracle).enorm() / oracle.enorm(),
              1e-5, "derived");
    return r;
}

// --- criterion 9: dynamics with self-force off --------------------------

double hyperbola_trace_error(double h) {
    DynamicsConfig cfg;
    cfg.e = 1.0;
    cfg.m0 = 1.0;
    cfg.h = h;
    cfg.tau_end = 2.0;
    cfg.self_force_on = false;
    cfg.external = ExternalField::constant({1.0, 0.0, 0.0}, 0.0, 1e9);
    const SimulationTrace tr = simulate(cfg);
    double worst = 0.0;
    for (const auto& n : tr.nodes) {
        const MVec3 exact{std::sinh(n.tau), std::cosh(n.tau) - 1.0, 0.0};
        worst = std::max(worst, (n.z - exact).enorm());
    }
    return worst;
}

Results criterion9() {
    Results r;
    const double e1 = hyperbola_trace_error(1e-3);
    add_bound(r, 9, "max |z - z_exact| at h=1e-3", e1, 1e-6, "paper");
    const double e4 = hyperbola_trace_error(4e-3);
    const double e2 = hyperbola_trace_error(2e-3);
    const double order = std::log2(e4 / e2);
    r.push_back({9, "convergence order", order, 2.0, 0.0, order >= 1.9, "paper"});
    return r;
}

// --- criterion 10: dynamics with self-force on --------------------------

Results criterion10() {
    Results r;
    const auto t0 = std::chrono::steady_clock::now();
    // Scale choice: the criterion pins e^2/(2 m) = 0.05 and the trajectory
    // shape is invariant under joint rescaling; m = 1e-3, e = 0.01, E = 0.095
    // makes the dressed acceleration eE/(m - e^2/2) exactly 1.
    DynamicsConfig cfg;
    cfg.e = 0.01;
    cfg.m0 = 1e-3;
    cfg.h = 5e-4;
    cfg.tau_end = 10.0;
    cfg.quad_tol = 1e-6;
    cfg.self_force_on = true;
    cfg.prehistory = PrehistoryPolicy::truncate_at(0.0);
    cfg.external = ExternalField::constant({0.095, 0.0, 0.0}, 0.0, 1e9);
    const SimulationTrace tr = simulate(cfg);
    // The runtime budget covers the N = 2e4-step simulation itself (the
    // O(N^2) history cost), not the small-N balance side study below.
    const double sim_seconds = seconds_since(t0);

    const AccelFit fit = fit_effective_acceleration(tr, 8.0, 10.0);
    const double target = cfg.e * 0.095 / (cfg.m0 - 0.5 * cfg.e * cfg.e);
    add(r, 10, "late-window |a| vs eE/(m - e^2/2)", fit.value, target,
        0.01 * target, "paper");

    double worst_mdot = 0.0;
    for (const auto& d : tr.diagnostics)
        worst_mdot = std::max(worst_mdot, std::abs(d.mass_rate));
    add_bound(r, 10, "max |mdot|", worst_mdot, 1e-6, "paper");

    // Balance convergence on a shorter window.
    auto balance_err = [&](double h) {
        DynamicsConfig c2 = cfg;
        c2.h = h;
        c2.tau_end = 1.0;
        const SimulationTrace t2 = simulate(c2);
        const auto reps = balance_residuals(t2, 3, 1e-9, /*with_angular=*/false);
        double worst = 0.0;
        for (const auto& rep : reps) worst = std::max(worst, rep.balance_p.enorm());
        return worst;
    };
    const double b1 = balance_err(4e-3);
    const double b2 = balance_err(2e-3);
    r.push_back({10, "balance residual reduction under h/2", b1 / b2, 3.5, 0.0,
                 b1 / b2 >= 3.5, "derived"});
    add_bound(r, 10, "simulation runtime seconds", sim_seconds, 300.0,
              "derived");
    return r;
}

// --- criterion 11: helium map -------------------------------------------

Results criterion11() {
    Results r;
    FilmParameters p;  // kappa = m_atom = rho_bar = hbar = 1, c_eff = 1
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    double worst_rt = 0.0;
    for (int k = 0; k < 50; ++k) {
        FilmState s{val(rng), val(rng), val(rng), val(rng), val(rng), val(rng)};
        const EmState em = film_to_em(s, p);
        const FilmState back = em_to_film(em.f, em.sources, p);
        worst_rt = std::max({worst_rt, std::abs(back.v1 - s.v1),
                             std::abs(back.v2 - s.v2), std::abs(back.rho - s.rho),
                             std::abs(back.rho_v - s.rho_v),
                             std::abs(back.jv1 - s.jv1),
                             std::abs(back.jv2 - s.jv2)});
    }
    add_bound(r, 11, "round-trip identity", worst_rt, 0.0, "trivial");

    // Synthetic smooth film state; its continuity residual must equal the
    // Faraday residual of the mapped field.
    auto v1f = [](const MVec3& x) { return std::sin(x.x + 0.3 * x.t) * std::cos(x.y); };
    auto v2f = [](const MVec3& x) { return std::cos(0.7 * x.x) * std::sin(x.y - 0.2 * x.t); };
    auto rhof = [](const MVec3& x) { return 0.5 * std::sin(x.t + 0.4 * x.x - 0.6 * x.y); };
    auto fmap = [&](const MVec3& x) -> FieldStrength {
        FilmState s;
        s.v1 = v1f(x);
        s.v2 = v2f(x);
        s.rho = rhof(x);
        return film_to_em(s, p).f;
    };
    const MVec3 probe{0.3, 0.2, -0.4};
    const double h = 1e-3;
    const double faraday = maxwell_residuals(fmap, probe, h).faraday;
    auto d = [&](auto&& f, MVec3 dx) {
        return (f(probe + dx) - f(probe - dx)) / (2.0 * h);
    };
    // Mapped continuity residual: -(c/rho_bar) drho/dt + div v.
    const double continuity = -d(rhof, {h, 0, 0}) + d(v1f, {0, h, 0}) +
                              d(v2f, {0, 0, h});
    add(r, 11, "continuity equals Faraday residual", faraday, continuity, 1e-6,
        "paper");
    return r;
}

// --- criterion 12: determinism ------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

Results criterion12() {
    Results r;
    const auto tmp = std::filesystem::temp_directory_path() / "edtail-determinism";
    std::filesystem::remove_all(tmp);

    const std::string sim_cfg =
        "[particle]\ne = 0.1\nm0 = 1\n"
        "[field]\nE = 0.5\ntau_on = 0\ntau_off = 1\n"
        "[integrator]\nh = 2e-3\ntau_end = 0.05\nquad_tol = 1e-6\n"
        "prehistory = truncate:0\nselfforce = on\n";
    const SimConfig c1 = parse_config_text(sim_cfg);
    run_simulate(c1, (tmp / "sim1").string());
    run_simulate(c1, (tmp / "sim2").string());
    const bool sim_same =
        slurp((tmp / "sim1/trace.csv").string()) ==
            slurp((tmp / "sim2/trace.csv").string()) &&
        slurp((tmp / "sim1/ledger.csv").string()) ==
            slurp((tmp / "sim2/ledger.csv").string());
    r.push_back({12, "simulate reruns byte-identical", sim_same ? 1.0 : 0.0, 1.0,
                 0.0, sim_same, "trivial"});

    const std::string map_cfg =
        "[particle]\ne = 1\n"
        "[fieldmap]\nworldline = static\nnx = 5\nny = 5\n"
        "xmin = 0.2\nxmax = 1\nymin = 0.1\nymax = 0.9\nt = 3\n";
    const SimConfig c2 = parse_config_text(map_cfg);
    run_fieldmap(c2, (tmp / "map1").string(), 1);
    run_fieldmap(c2, (tmp / "map2").string(), 2);
    const bool map_same = slurp((tmp / "map1/fieldmap.csv").string()) ==
                          slurp((tmp / "map2/fieldmap.csv").string());
    r.push_back({12, "fieldmap reruns byte-identical (threads 1 vs 2)",
                 map_same ? 1.0 : 0.0, 1.0, 0.0, map_same, "trivial"});
    std::filesystem::remove_all(tmp);
    return r;
}

}  // namespace

std::vector<CheckResult> run_criterion(int k) {
    switch (k) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
        case 9: return criterion9();
        case 10: return criterion10();
        case 11: return criterion11();
        case 12: return criterion12();
        default: throw std::invalid_argument("unknown criterion");
    }
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "static") return {1, 2, 4};
    if (suite == "uniform") return {3};
    if (suite == "hyperbolic") return {5, 6};
    if (suite == "maxwell") return {7};
    if (suite == "ledger") return {8};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    throw std::invalid_argument("unknown suite: " + suite);
}

std::vector<CheckResult> run_suite(const std::string& suite) {
    std::vector<CheckResult> all;
    for (int k : suite_criteria(suite)) {
        auto r = run_criterion(k);
        all.insert(all.end(), r.begin(), r.end());
    }
    return all;
}

}  // namespace edtail
