#include <doctest.h>

#include "edtail/config.hpp"

using namespace edtail;

namespace {
const char* kGood =
    "[particle]\n"
    "e = 0.5\n"
    "m0 = 2\n"
    "[field]\n"
    "E = 1.5\n"
    "tau_on = 0\n"
    "tau_off = 3\n"
    "[integrator]\n"
    "h = 1e-3\n"
    "tau_end = 2\n"
    "quad_tol = 1e-8\n"
    "prehistory = truncate:0\n"
    "selfforce = off\n"
    "# comment line\n"
    "[output]\n"
    "trace = my_trace.csv\n";
}  // namespace

TEST_CASE("well-formed config parses") {
    const SimConfig c = parse_config_text(kGood);
    CHECK(c.e == 0.5);
    CHECK(c.m0 == 2.0);
    CHECK(c.E == 1.5);
    CHECK(c.h == 1e-3);
    CHECK_FALSE(c.selfforce);
    CHECK(c.trace_path == "my_trace.csv");
    const DynamicsConfig d = to_dynamics(c);
    CHECK(d.external.kind == ExternalField::Kind::Constant);
    CHECK(d.external.f.e1 == 1.5);
}

TEST_CASE("unknown keys and sections are errors") {
    CHECK_THROWS_AS(parse_config_text("[particle]\ncharge = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[plasma]\ne = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("e = 1\n"), ConfigError);  // no section
}

TEST_CASE("bad values are errors") {
    CHECK_THROWS_AS(parse_config_text("[particle]\ne = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[integrator]\nh = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[integrator]\nselfforce = maybe\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[integrator]\nprehistory = sometimes\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("[field]\ntau_on = 2\ntau_off = 1\n"),
                    ConfigError);
}

TEST_CASE("prehistory policies parse") {
    CHECK(parse_prehistory("include").kind == PrehistoryPolicy::Kind::IncludeAsymptote);
    const PrehistoryPolicy p = parse_prehistory("truncate:1.5");
    CHECK(p.kind == PrehistoryPolicy::Kind::TruncateAt);
    CHECK(p.tau0 == 1.5);
}

TEST_CASE("config hash is stable and sensitive") {
    const std::string h1 = config_hash(kGood);
    CHECK(h1 == config_hash(kGood));
    CHECK(h1 != config_hash(std::string(kGood) + " "));
    CHECK(h1.size() == 16);
}
