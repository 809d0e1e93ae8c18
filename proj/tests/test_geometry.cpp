#include <doctest.h>

#include <random>

#include "edtail/geometry.hpp"

using namespace edtail;

TEST_CASE("mdot uses the -++ signature") {
    CHECK(mdot({1, 0, 0}, {1, 0, 0}) == -1.0);
    CHECK(mdot({0, 2, 3}, {0, 2, 3}) == 13.0);
    CHECK(mdot({1, 1, 0}, {1, 1, 0}) == 0.0);  // null
}

TEST_CASE("wedge of velocity with itself vanishes") {
    const MVec3 u{1.3, 0.5, -0.7};
    const FieldStrength f = wedge(u, u);
    CHECK(f.e1 == 0.0);
    CHECK(f.e2 == 0.0);
    CHECK(f.h == 0.0);
}

TEST_CASE("wedge components") {
    const FieldStrength f = wedge({1, 0, 0}, {0, 1, 0});
    CHECK(f.e1 == 1.0);
    CHECK(f.e2 == 0.0);
    CHECK(f.h == 0.0);
}

TEST_CASE("lorentz force on a charge at rest is e E") {
    const MVec3 f = lorentz_force({2.0, -0.5, 7.0}, {1, 0, 0}, 1.5);
    CHECK(f.t == doctest::Approx(0.0));
    CHECK(f.x == doctest::Approx(3.0));
    CHECK(f.y == doctest::Approx(-0.75));
}

TEST_CASE("lorentz force is orthogonal to u") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        MVec3 u{0, d(rng), d(rng)};
        u.t = std::sqrt(1 + u.x * u.x + u.y * u.y);
        const FieldStrength f{d(rng), d(rng), d(rng)};
        CHECK(std::abs(mdot(lorentz_force(f, u, 2.0), u)) < 1e-12);
    }
}

TEST_CASE("lorentz force rejects unnormalized velocity") {
    CHECK_THROWS_AS(lorentz_force({1, 0, 0}, {1, 1, 0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("raise/lower round trip") {
    const FieldStrength f{0.3, -1.2, 0.9};
    const FieldStrength g = lower_indices(raise_indices(f));
    CHECK(g.e1 == f.e1);
    CHECK(g.e2 == f.e2);
    CHECK(g.h == f.h);
    const auto cov = f.covariant();
    CHECK(cov[0][1] == -f.e1);
    CHECK(cov[1][2] == f.h);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(cov[i][j] == -cov[j][i]);
}

TEST_CASE("wedge_contravariant is antisymmetric and bilinear") {
    const MVec3 a{1.1, -0.3, 0.2}, b{0.4, 2.0, -1.0}, c{0.9, 0.1, 0.7};
    const AngularMomentum2 ab = wedge_contravariant(a, b);
    const AngularMomentum2 ba = wedge_contravariant(b, a);
    CHECK(ab.m01 == -ba.m01);
    CHECK(ab.m12 == -ba.m12);
    const AngularMomentum2 sum = wedge_contravariant(a, b + c);
    const AngularMomentum2 parts = wedge_contravariant(a, b) + wedge_contravariant(a, c);
    CHECK(sum.m02 == doctest::Approx(parts.m02));
}
