#include <doctest.h>

#include <random>

#include "edtail/helium_map.hpp"

using namespace edtail;

TEST_CASE("zero film state maps to zero fields") {
    const EmState em = film_to_em({}, {});
    CHECK(em.f.e1 == 0.0);
    CHECK(em.f.e2 == 0.0);
    CHECK(em.f.h == 0.0);
    CHECK(em.sources.charge_density == 0.0);
}

TEST_CASE("pure phonon density at rho_bar gives H = -1") {
    FilmState s;
    s.rho = 1.0;
    const EmState em = film_to_em(s, {});  // kappa/m = 1, rho_bar = 1
    CHECK(em.f.h == -1.0);
    CHECK(em.f.e1 == 0.0);
    CHECK(em.f.e2 == 0.0);
}

TEST_CASE("velocity components swap into the electric field") {
    FilmState s;
    s.v1 = 0.25;
    s.v2 = -0.5;
    const EmState em = film_to_em(s, {});
    CHECK(em.f.e1 == 0.5);   // -v2
    CHECK(em.f.e2 == 0.25);  // v1
}

TEST_CASE("inverse map on the static-charge field values") {
    const FilmState s = em_to_film({0.12, 0.16, 0.0}, {}, {});
    CHECK(s.v1 == 0.16);
    CHECK(s.v2 == -0.12);
    CHECK(s.rho == 0.0);
}

TEST_CASE("round trip is exact") {
    FilmParameters p{2.0, 0.5, 1.5, 1.0};
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int k = 0; k < 30; ++k) {
        FilmState s{d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
        const EmState em = film_to_em(s, p);
        const FilmState back = em_to_film(em.f, em.sources, p);
        CHECK(back.v1 == s.v1);
        CHECK(back.v2 == s.v2);
        CHECK(back.rho == doctest::Approx(s.rho).epsilon(1e-14));
        CHECK(back.rho_v == doctest::Approx(s.rho_v).epsilon(1e-14));
        CHECK(back.jv1 == doctest::Approx(s.jv1).epsilon(1e-14));
    }
}

TEST_CASE("vortex winding to charge") {
    FilmParameters p;
    bool warned = false;
    CHECK(vorticity_to_charge(0, p, &warned) == 0.0);
    CHECK_FALSE(warned);
    CHECK(vorticity_to_charge(1, p, &warned) == 1.0);
    CHECK_FALSE(warned);
    CHECK(vorticity_to_charge(-1, p, &warned) == -1.0);
    FilmParameters p2;
    p2.hbar = 0.5;
    p2.m_atom = 2.0;
    CHECK(vorticity_to_charge(-1, p2, &warned) == -0.25);
    CHECK(vorticity_to_charge(3, p, &warned) == 3.0);
    CHECK(warned);  // non-minimal vortex flagged
}

TEST_CASE("parameters must be positive") {
    FilmParameters p;
    p.kappa = 0.0;
    CHECK_THROWS_AS(film_to_em({}, p), std::invalid_argument);
}
