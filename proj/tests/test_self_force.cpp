#include <doctest.h>

#include <cmath>
#include <vector>

#include "edtail/self_force.hpp"

using namespace edtail;

TEST_CASE("abraham limit, frozen circular value") {
    CircularWorldline w(0.1, 1.0);
    const MVec3 abr = abraham_limit(w.eval(0.3), 1.0);
    CHECK(abr.t == doctest::Approx(-0.0068362943594817677).epsilon(1e-13));
    CHECK(abr.x == doctest::Approx(0.020301313440281162).epsilon(1e-13));
    CHECK(abr.y == doctest::Approx(-0.065279006805769362).epsilon(1e-13));
}

TEST_CASE("combined integrand approaches the Abraham limit") {
    CircularWorldline w(0.1, 1.0);
    const double tau = 0.3;
    const MVec3 limit = abraham_limit(w.eval(tau), 1.0);
    double prev = 1e300;
    for (double d : {1e-2, 1e-3, 1e-4}) {
        const double gap =
            (combined_integrand(w, tau, tau - d, 1.0).combined - limit).enorm();
        CHECK(gap < prev + 1e-15);
        prev = gap;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("raw force density diverges like 1/Delta") {
    CircularWorldline w(0.1, 1.0);
    const double f1 = force_density(w, 0.3, 0.3 - 1e-4, 1.0).enorm();
    const double f2 = force_density(w, 0.3, 0.3 - 2e-4, 1.0).enorm();
    CHECK(f1 / f2 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("hyperbolic self-force closed form") {
    HyperbolicWorldline w(1.0);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);
    for (double tau : {1.0, 2.0}) {
        const SelfForceResult r = self_force(w, tau, 1.0, pol, 1e-9);
        const double coeff = 0.5 * (1.0 - 1.0 / std::cosh(0.5 * tau));
        const MVec3 exact = w.eval(tau).a * coeff;
        CHECK((r.force - exact).enorm() / exact.enorm() < 1e-5);
        CHECK(std::abs(r.mass_rate) < 1e-8);
    }
    // Frozen coefficients: 0.5 (1 - sech(tau/2)).
    const SelfForceResult r1 = self_force(w, 1.0, 1.0, pol, 1e-9);
    const WorldlineState s1 = w.eval(1.0);
    CHECK(mdot(r1.force, s1.a) / mdot(s1.a, s1.a) ==
          doctest::Approx(0.056590558014963046).epsilon(1e-5));
}

TEST_CASE("self-force scales like e^2") {
    HyperbolicWorldline w(1.0);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);
    const MVec3 f1 = self_force(w, 1.0, 1.0, pol, 1e-9).force;
    const MVec3 f2 = self_force(w, 1.0, 2.0, pol, 1e-9).force;
    CHECK((f2 - f1 * 4.0).enorm() < 1e-7);
}

TEST_CASE("self-force orthogonal complement vanishes on the hyperbola") {
    HyperbolicWorldline w(1.0);
    const SelfForceResult r =
        self_force(w, 1.5, 1.0, PrehistoryPolicy::truncate_at(0.0), 1e-9);
    CHECK(std::abs(r.force.y) < 1e-10);  // out of span{u, a}
}

TEST_CASE("uniform worldline feels no self-force") {
    UniformWorldline w({0, 0, 0}, {std::sqrt(1.25), 0.5, 0.0});
    const SelfForceResult r =
        self_force(w, 0.8, 1.0, PrehistoryPolicy::include_asymptote(), 1e-10);
    CHECK(r.force.enorm() < 1e-10);
    CHECK(std::abs(r.mass_rate) < 1e-10);
}

TEST_CASE("parts reconstruction matches the combined evaluation") {
    HyperbolicWorldline w(1.0);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);
    const double tau = 1.3, e = 1.0;
    const SelfForceResult whole = self_force(w, tau, e, pol, 1e-10);
    for (double hint : {1e-3, 2e-4}) {
        const SelfForceParts p = self_force_parts(w, tau, e, pol, 1e-10, hint);
        const WorldlineState st = w.eval(tau);
        const MVec3 rebuilt = p.history_force + st.a * p.counterterm_coefficient +
                              abraham_limit(st, e) * p.series_cut;
        CHECK((rebuilt - whole.force).enorm() < 1e-6);
        CHECK(p.mass_rate == doctest::Approx(whole.mass_rate).epsilon(1e-4));
    }
}

TEST_CASE("mass rate density stays bounded near coincidence") {
    CircularWorldline w(0.1, 1.0);
    double prev = std::abs(mass_rate_density(w, 0.3, 0.3 - 1e-2, 1.0));
    for (double d : {1e-3, 1e-4, 1e-5}) {
        const double v = std::abs(mass_rate_density(w, 0.3, 0.3 - d, 1.0));
        CHECK(v < 10.0 * std::max(prev, 1e-6));
        prev = v;
    }
}

TEST_CASE("tail force pair exposes the divergence coefficient") {
    HyperbolicWorldline w(1.0);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);
    const TailForceResult r =
        tail_lorentz_force(w, 1.0, 1.0, Direction::Retarded, 2.0, 1e-3, pol);
    const MVec3 expect = w.eval(1.0).a * -0.5;
    CHECK((r.divergence_coefficient - expect).enorm() < 1e-12);
    // The cutoff integral alone grows as the cutoff shrinks.
    const TailForceResult r2 =
        tail_lorentz_force(w, 1.0, 1.0, Direction::Retarded, 2.0, 1e-4, pol);
    CHECK(r2.cutoff_integral.enorm() > r.cutoff_integral.enorm());
}
