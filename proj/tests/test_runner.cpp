#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "edtail/runner.hpp"

using namespace edtail;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("fieldmap run writes the documented artifact") {
    const SimConfig c = parse_config_text(
        "[particle]\ne = 1\n"
        "[fieldmap]\nworldline = static\nnx = 3\nny = 3\n"
        "xmin = 0.25\nxmax = 0.75\nymin = 0.1\nymax = 0.6\nt = 3\n");
    const auto dir = std::filesystem::temp_directory_path() / "edtail-run-test";
    std::filesystem::remove_all(dir);
    run_fieldmap(c, dir.string(), 1);
    const std::string csv = slurp(dir / "fieldmap.csv");
    CHECK(csv.rfind("x0,x1,x2,E1,E2,H,quad_error\n", 0) == 0);
    // 9 grid rows + header.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
    CHECK(std::filesystem::exists(dir / "manifest.json"));

    // Spot check one grid value against the static closed form.
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    std::getline(in, line);
    std::vector<double> v;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    const double rr = v[1] * v[1] + v[2] * v[2];
    CHECK(v[3] == doctest::Approx(v[1] / rr).epsilon(1e-6));
    CHECK(v[4] == doctest::Approx(v[2] / rr).epsilon(1e-6));
    std::filesystem::remove_all(dir);
}

TEST_CASE("grid point on the worldline is flagged, run continues") {
    const SimConfig c = parse_config_text(
        "[particle]\ne = 1\n"
        "[fieldmap]\nworldline = static\nnx = 3\nny = 1\n"
        "xmin = -0.5\nxmax = 0.5\nymin = 0\nymax = 0\nt = 3\n");
    const auto dir = std::filesystem::temp_directory_path() / "edtail-run-flag";
    std::filesystem::remove_all(dir);
    run_fieldmap(c, dir.string(), 1);
    const std::string csv = slurp(dir / "fieldmap.csv");
    CHECK(csv.find("nan") != std::string::npos);  // the x=0,y=0 row
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    std::filesystem::remove_all(dir);
}

TEST_CASE("simulate run produces trace, ledger, and manifest") {
    const SimConfig c = parse_config_text(
        "[particle]\ne = 1\nm0 = 1\n"
        "[field]\nE = 1\ntau_on = 0\ntau_off = 5\n"
        "[integrator]\nh = 1e-2\ntau_end = 0.1\nselfforce = off\n");
    const auto dir = std::filesystem::temp_directory_path() / "edtail-sim-test";
    std::filesystem::remove_all(dir);
    run_simulate(c, dir.string());
    CHECK(std::filesystem::exists(dir / "trace.csv"));
    CHECK(std::filesystem::exists(dir / "ledger.csv"));
    const std::string manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("config_hash") != std::string::npos);
    CHECK(manifest.find(config_hash(c.raw)) != std::string::npos);
    // Row count: tau_end/h + 1 nodes.
    const std::string trace = slurp(dir / "trace.csv");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 12);
    std::filesystem::remove_all(dir);
}

TEST_CASE("convert round-trips a field map") {
    const auto dir = std::filesystem::temp_directory_path() / "edtail-conv-test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "field.csv");
        f << "x0,x1,x2,E1,E2,H,quad_error\n";
        f << "0,0.5,0.25,0.12,0.16,-0.5,0\n";
    }
    FilmParameters p;
    run_convert((dir / "field.csv").string(), (dir / "film.csv").string(), p, false);
    const std::string film = slurp(dir / "film.csv");
    CHECK(film.rfind("x0,x1,x2,v1,v2,rho\n", 0) == 0);
    CHECK(film.find("0.16,-0.12,0.5") != std::string::npos);
    run_convert((dir / "film.csv").string(), (dir / "field2.csv").string(), p, true);
    const std::string f2 = slurp(dir / "field2.csv");
    CHECK(f2.find("0.12,0.16,-0.5") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("make_worldline covers the families") {
    SimConfig c;
    c.worldline = "hyperbolic";
    CHECK(make_worldline(c)->past_asymptote().kind == AsymptoteKind::Static);
    c.worldline = "circular";
    CHECK(make_worldline(c)->past_asymptote().kind == AsymptoteKind::None);
    c.worldline = "uniform";
    c.ux = 0.5;
    const auto w = make_worldline(c);
    CHECK(std::abs(mdot(w->eval(0.3).u, w->eval(0.3).u) + 1.0) < 1e-12);
}
