#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "edtail/worldline.hpp"

using namespace edtail;

namespace {
void check_kinematics(const Worldline& w, double tau) {
    const WorldlineState s = w.eval(tau);
    CHECK(mdot(s.u, s.u) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(mdot(s.u, s.a)) < 1e-10);
}
}  // namespace

TEST_CASE("family kinematic invariants") {
    StaticWorldline st;
    UniformWorldline un({0, 0, 0}, {std::sqrt(1.25), 0.5, 0.0});
    HyperbolicWorldline hy(2.0);
    CircularWorldline ci(0.1, 1.0);
    for (double tau : {-1.0, 0.0, 0.3, 2.0}) {
        check_kinematics(st, tau);
        check_kinematics(un, tau);
        check_kinematics(hy, tau);
        check_kinematics(ci, tau);
    }
}

TEST_CASE("hyperbolic closed form") {
    HyperbolicWorldline w(0.5);
    const WorldlineState s = w.eval(1.2);
    CHECK(s.z.t == doctest::Approx(std::sinh(0.6) / 0.5).epsilon(1e-14));
    CHECK(s.z.x == doctest::Approx((std::cosh(0.6) - 1.0) / 0.5).epsilon(1e-14));
    CHECK(std::sqrt(mdot(s.a, s.a)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hyperbolic static prehistory glues at tau=0") {
    HyperbolicWorldline w(1.0, true);
    CHECK(w.past_asymptote().kind == AsymptoteKind::Static);
    const WorldlineState s = w.eval(-2.0);
    CHECK(s.z.t == doctest::Approx(-2.0));
    CHECK(s.z.x == 0.0);
    CHECK(s.u.t == 1.0);
    CHECK(s.a.enorm() == 0.0);
}

TEST_CASE("circular gamma factor") {
    CircularWorldline w(0.2, 1.5);
    const double g = 1.0 / std::sqrt(1.0 - 0.09);
    CHECK(w.eval(0.7).u.t == doctest::Approx(g).epsilon(1e-14));
}

TEST_CASE("retarded and advanced times for the static charge") {
    StaticWorldline w;
    const MVec3 x{2.0, 0.6, -0.8};  // r = 1
    const LightConeRoot ret = retarded_time(w, x);
    const LightConeRoot adv = advanced_time(w, x);
    CHECK(ret.tau == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(adv.tau == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_FALSE(ret.on_worldline);
}

TEST_CASE("retarded time flags coincidence on the worldline") {
    StaticWorldline w;
    const LightConeRoot ret = retarded_time(w, {1.5, 0.0, 0.0});
    CHECK(ret.on_worldline);
}

TEST_CASE("separation on the hyperbola matches 2 sinh(D/2)") {
    HyperbolicWorldline w(1.0);
    for (double d : {1e-5, 1e-3, 0.1, 1.0, 4.0}) {
        const Separation s = separation(w, 2.0, 2.0 - d);
        CHECK(s.norm ==
              doctest::Approx(2.0 * std::sinh(0.5 * d)).epsilon(1e-11));
    }
}

TEST_CASE("separation rejects spacelike pairs") {
    // Two distinct worldline points are always timelike-separated on a
    // single timelike worldline, so force a bad call via tau ordering.
    HyperbolicWorldline w(1.0);
    CHECK_THROWS(separation(w, 1.0, 1.0));
}

TEST_CASE("tabulated worldline interpolates and round-trips CSV") {
    HyperbolicWorldline hy(1.0);
    TabulatedWorldline tab;
    for (int i = 0; i <= 200; ++i) {
        const double tau = 0.01 * i;
        const WorldlineState s = hy.eval(tau);
        tab.append(tau, s.z, s.u);
    }
    // Hermite interpolation error ~ h^4 on (z, u), h^2 on a.
    const WorldlineState got = tab.eval(0.5037);
    const WorldlineState exact = hy.eval(0.5037);
    CHECK((got.z - exact.z).enorm() < 1e-9);
    CHECK((got.u - exact.u).enorm() < 1e-8);
    CHECK((got.a - exact.a).enorm() < 1e-4);

    const auto path = std::filesystem::temp_directory_path() / "tab_test.csv";
    tab.save_csv(path.string());
    const TabulatedWorldline back = TabulatedWorldline::load_csv(path.string());
    REQUIRE(back.size() == tab.size());
    const WorldlineState b = back.eval(0.777);
    const WorldlineState t = tab.eval(0.777);
    CHECK(b.z.t == t.z.t);  // 17 significant digits round-trip exactly
    CHECK(b.u.x == t.u.x);
    std::filesystem::remove(path);
}

TEST_CASE("tabulated append/pop guards") {
    TabulatedWorldline tab;
    tab.append(0.0, {0, 0, 0}, {1, 0, 0});
    CHECK_THROWS_AS(tab.append(0.0, {0, 0, 0}, {1, 0, 0}), std::invalid_argument);
    tab.pop_back();
    CHECK(tab.size() == 0);
    CHECK_THROWS_AS(tab.pop_back(), std::domain_error);
}
