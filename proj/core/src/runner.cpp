#include "edtail/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "edtail/radiation_ledger.hpp"

namespace edtail {

namespace {

constexpr const char* kVersion = "0.1.0";

void write_manifest(const std::string& path, const std::string& subcommand,
                    const SimConfig& c, double wall_seconds,
                    const std::vector<std::string>& artifacts) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["config_hash"] = config_hash(c.raw);
    j["version"] = kVersion;
    j["wall_time_seconds"] = wall_seconds;
    j["artifacts"] = artifacts;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << j.dump(2) << "\n";
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

std::unique_ptr<Worldline> make_worldline(const SimConfig& c) {
    if (c.worldline == "static") return std::make_unique<StaticWorldline>();
    if (c.worldline == "uniform") {
        MVec3 u{std::sqrt(1.0 + c.ux * c.ux + c.uy * c.uy), c.ux, c.uy};
        return std::make_unique<UniformWorldline>(MVec3{0.0, 0.0, 0.0}, u);
    }
    if (c.worldline == "hyperbolic")
        return std::make_unique<HyperbolicWorldline>(c.accel, true);
    if (c.worldline == "circular")
        return std::make_unique<CircularWorldline>(c.radius, c.omega);
    throw ConfigError("unknown worldline family " + c.worldline);
}

std::string run_simulate(const SimConfig& c, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    SimulationTrace trace = simulate(to_dynamics(c));
    trace.config_hash = config_hash(c.raw);
    const std::string trace_path = join(out_dir, c.trace_path);
    const std::string ledger_path = join(out_dir, c.ledger_path);
    trace.save_csv(trace_path);
    if (trace.failed)
        throw NumericalFailure(trace.failure + " (last-good trace flushed)");
    const auto reports = balance_residuals(trace, 8, std::max(c.quad_tol, 1e-7));
    save_ledger_csv(reports, ledger_path);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string manifest = join(out_dir, "manifest.json");
    write_manifest(manifest, "simulate", c, wall, {c.trace_path, c.ledger_path});
    return manifest;
}

std::string run_fieldmap(const SimConfig& c, const std::string& out_dir,
                         int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    const auto w = make_worldline(c);
    const Direction dir =
        c.direction == "advanced" ? Direction::Advanced : Direction::Retarded;

    struct Row {
        MVec3 x;
        FieldStrength f;
        double err = 0.0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(c.nx) * c.ny);
    for (int i = 0; i < c.nx; ++i)
        for (int j = 0; j < c.ny; ++j) {
            const double x = c.nx == 1 ? c.xmin
                                       : c.xmin + (c.xmax - c.xmin) * i / (c.nx - 1);
            const double y = c.ny == 1 ? c.ymin
                                       : c.ymin + (c.ymax - c.ymin) * j / (c.ny - 1);
            rows[static_cast<std::size_t>(i) * c.ny + j].x = {c.t_slice, x, y};
        }

    auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            try {
                FieldQuery q{rows[k].x, c.e, dir, c.quad_tol};
                const FieldSample s = field_with_error(*w, q);
                rows[k].f = s.f;
                rows[k].err = s.quad_error;
            } catch (const std::exception&) {
                rows[k].f = {};
                rows[k].err = std::nan("");  // error flag: point on worldline
            }
        }
    };
    if (threads <= 1) {
        eval_range(0, rows.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rows.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::size_t lo = std::min(rows.size(), t * chunk);
            const std::size_t hi = std::min(rows.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(eval_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    const std::string field_path = join(out_dir, c.field_path);
    std::ofstream f(field_path);
    if (!f) throw std::runtime_error("cannot open " + field_path);
    f << "x0,x1,x2,E1,E2,H,quad_error\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.x.t, r.x.x, r.x.y, r.f.e1, r.f.e2, r.f.h, r.err);
        f << buf;
    }
    f.close();

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string manifest = join(out_dir, "manifest.json");
    write_manifest(manifest, "fieldmap", c, wall, {c.field_path});
    return manifest;
}

void run_convert(const std::string& in_csv, const std::string& out_csv,
                 const FilmParameters& p, bool invert) {
    std::ifstream in(in_csv);
    if (!in) throw std::runtime_error("cannot read " + in_csv);
    std::ofstream out(out_csv);
    if (!out) throw std::runtime_error("cannot open " + out_csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv " + in_csv);
    out << (invert ? "x0,x1,x2,E1,E2,H,quad_error\n" : "x0,x1,x2,v1,v2,rho\n");
    char buf[256];
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> v;
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() < 6) throw std::runtime_error("short csv row in " + in_csv);
        if (!invert) {
            const FilmState fs = em_to_film({v[3], v[4], v[5]}, {}, p);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          v[0], v[1], v[2], fs.v1, fs.v2, fs.rho);
        } else {
            FilmState fs;
            fs.v1 = v[3];
            fs.v2 = v[4];
            fs.rho = v[5];
            const EmState em = film_to_em(fs, p);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,0\n",
                          v[0], v[1], v[2], em.f.e1, em.f.e2, em.f.h);
        }
        out << buf;
    }
}

}  // namespace edtail
