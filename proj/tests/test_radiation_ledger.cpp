#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "edtail/radiation_ledger.hpp"

using namespace edtail;

namespace {

// Worldline with a constant spatial shift; used for the translation
// identity of the radiated angular momentum.
class ShiftedWorldline final : public Worldline {
public:
    ShiftedWorldline(const Worldline& base, const MVec3& shift)
        : base_(base), shift_(shift) {}
    WorldlineState eval(double tau) const override {
        WorldlineState s = base_.eval(tau);
        s.z += shift_;
        return s;
    }
    Asymptote past_asymptote() const override { return base_.past_asymptote(); }

private:
    const Worldline& base_;
    MVec3 shift_;
};

}  // namespace

TEST_CASE("paired integrand cancels the divergence") {
    HyperbolicWorldline w(1.0);
    const double v1 = paired_tail_integrand(w, 1.0, 1e-3, 1.0).enorm();
    const double v2 = paired_tail_integrand(w, 1.0, 1e-5, 1.0).enorm();
    // Bounded, not growing like 1/Delta (which would be a factor 100).
    CHECK(v2 < 10.0 * std::max(v1, 1e-6));
}

TEST_CASE("radiated momentum vanishes for uniform motion") {
    UniformWorldline w({0, 0, 0}, {std::sqrt(1.25), 0.5, 0.0});
    const MVec3 p =
        radiated_momentum(w, 1.0, 1.0, PrehistoryPolicy::include_asymptote(), 1e-9);
    CHECK(p.enorm() < 1e-10);
    const AngularMomentum2 m = radiated_angular_momentum(
        w, 1.0, 1.0, PrehistoryPolicy::include_asymptote(), 1e-9);
    // The z-moment arm amplifies the short-gap rounding floor of the inner
    // integrand, so this is a quadrature noise bound, not a tolerance bound.
    CHECK(m.enorm() < 1e-8);
}

TEST_CASE("radiated momentum scales like e^2 on the hyperbola") {
    HyperbolicWorldline w(1.0);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);
    const MVec3 p1 = radiated_momentum(w, 1.0, 1.0, pol, 1e-7);
    const MVec3 p2 = radiated_momentum(w, 1.0, 0.5, pol, 1e-7);
    CHECK((p1 - p2 * 4.0).enorm() < 1e-5 * p1.enorm() + 1e-9);
}

TEST_CASE("angular momentum translation identity") {
    HyperbolicWorldline base(1.0);
    const MVec3 shift{0.0, 0.3, -0.7};
    ShiftedWorldline shifted(base, shift);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);
    const double tau = 1.0, e = 1.0;
    const MVec3 p_rad = radiated_momentum(base, tau, e, pol, 1e-8);
    const AngularMomentum2 m0 = radiated_angular_momentum(base, tau, e, pol, 1e-8);
    const AngularMomentum2 m1 = radiated_angular_momentum(shifted, tau, e, pol, 1e-8);
    const AngularMomentum2 expect = m0 + wedge_contravariant(shift, p_rad);
    CHECK((m1 - expect).enorm() < 1e-6);
}

TEST_CASE("dressed momentum closed form on the hyperbola") {
    // For a = e = m = 1 and truncate-at(0), the tail integral evaluates in
    // closed form and p_part(1) = (cosh(1/2), sinh(1/2), 0).
    HyperbolicWorldline w(1.0);
    const MVec3 p =
        dressed_momentum(w, 1.0, 1.0, 1.0, PrehistoryPolicy::truncate_at(0.0), 1e-11);
    CHECK(p.t == doctest::Approx(1.1276259652063808).epsilon(1e-10));
    CHECK(p.x == doctest::Approx(0.52109530549374736).epsilon(1e-10));
    CHECK(std::abs(p.y) < 1e-12);
}

TEST_CASE("dressed momentum reduces to m u") {
    const MVec3 u{std::sqrt(1.25), 0.5, 0.0};
    UniformWorldline w({0, 0, 0}, u);
    const MVec3 p =
        dressed_momentum(w, 0.6, 1.0, 2.5, PrehistoryPolicy::include_asymptote(), 1e-10);
    CHECK((p - u * 2.5).enorm() < 1e-10);

    HyperbolicWorldline h(1.0);
    const MVec3 p0 =
        dressed_momentum(h, 1e-12, 1.0, 1.5, PrehistoryPolicy::truncate_at(0.0), 1e-10);
    CHECK((p0 - h.eval(1e-12).u * 1.5).enorm() < 1e-9);
}

TEST_CASE("dressed momentum rejects divergent prehistory") {
    HyperbolicWorldline w(1.0, true);  // static past, moving at tau > 0
    CHECK_THROWS_AS(
        dressed_momentum(w, 1.0, 1.0, 1.0, PrehistoryPolicy::include_asymptote(), 1e-8),
        std::domain_error);
}

TEST_CASE("balance residuals vanish for free uniform motion") {
    SimulationTrace tr;
    tr.h = 0.01;
    tr.e = 1.0;
    tr.prehistory = PrehistoryPolicy::truncate_at(0.0);
    const MVec3 u{std::sqrt(1.25), 0.5, 0.0};
    for (int i = 0; i <= 40; ++i) {
        const double tau = 0.01 * i;
        tr.nodes.push_back({tau, MVec3{tau, 0, 0} + u * tau, u, 1.0, {}});
    }
    // Uniform motion written as z = z0 + u tau needs z0 = 0 here.
    for (auto& n : tr.nodes) n.z = u * n.tau;
    const auto reps = balance_residuals(tr, 4, 1e-9);
    REQUIRE(!reps.empty());
    // Node positions carry ~1e-16 |z| rounding; the Hermite-derived
    // velocity and acceleration amplify it by 1/h and 1/h^2, which is the
    // floor these residuals sit on for tabulated (not analytic) motion.
    for (const auto& r : reps) {
        CHECK(r.balance_p.enorm() < 1e-9);
        CHECK(r.balance_m.enorm() < 1e-9);
        CHECK(r.p_rad.enorm() < 1e-7);
    }
}

TEST_CASE("ledger csv writes one row per report") {
    std::vector<LedgerReport> reps(3);
    const auto path = std::filesystem::temp_directory_path() / "ledger_test.csv";
    save_ledger_csv(reps, path.string());
    std::ifstream f(path);
    std::string line;
    int rows = 0;
    while (std::getline(f, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);  // header + 3
    std::filesystem::remove(path);
}
