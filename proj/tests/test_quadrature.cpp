#include <doctest.h>

#include <cmath>

#include "edtail/quadrature.hpp"

using namespace edtail;

TEST_CASE("gk15 adaptive on smooth integrands") {
    auto r = quad::integrate<double>([](double x) { return std::sin(x); }, 0.0,
                                     M_PI, 1e-12);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.error < 1e-10);
}

TEST_CASE("vector-valued integration") {
    auto r = quad::integrate<MVec3>(
        [](double x) { return MVec3{std::cos(x), x, 1.0}; }, 0.0, 1.0, 1e-12);
    CHECK(r.value.t == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
    CHECK(r.value.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.value.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("endpoint substitution handles 1/sqrt singularities") {
    // Int_0^1 dx / sqrt(x) via x = v^2.
    auto r = quad::integrate<double>([](double v) { return 2.0; }, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(2.0));
    // Nodes are interior, so even the untransformed integrand converges.
    auto s = quad::integrate<double>(
        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("half-infinite tail integration") {
    auto r = quad::integrate_tail_below<double>(
        [](double s) { return 1.0 / (1.0 + s * s); }, 0.0, 1e-12);
    CHECK(r.value == doctest::Approx(M_PI / 2).epsilon(1e-10));
}

TEST_CASE("gl7 is exact for low-degree polynomials") {
    auto v = quad::gl7<double>([](double x) { return x * x * x * x * x; }, 0.0, 2.0);
    CHECK(v == doctest::Approx(64.0 / 6.0).epsilon(1e-14));
}
