#pragma once

#include <string>

#include "edtail/dynamics.hpp"

// Scenario configuration: an INI-style key-value file with fixed sections.
// Unknown sections or keys are errors, as are values that fail the module
// preconditions they feed.

namespace edtail {

struct SimConfig {
    // [particle]
    double e = 1.0;
    double m0 = 1.0;

    // [field] constant external field on a proper-time window
    double E = 0.0;   // E1 component
    double E2 = 0.0;
    double H = 0.0;
    double tau_on = 0.0;
    double tau_off = 0.0;

    // [integrator]
    double h = 1e-3;
    double tau_end = 1.0;
    double quad_tol = 1e-7;
    std::string prehistory = "truncate:0";  // "include" or "truncate:<tau0>"
    bool selfforce = true;
    bool coarsen = false;

    // [output]
    std::string trace_path = "trace.csv";
    std::string ledger_path = "ledger.csv";
    std::string field_path = "fieldmap.csv";

    // [fieldmap]
    std::string worldline = "static";  // static|uniform|hyperbolic|circular
    double accel = 1.0;                // hyperbolic
    double radius = 0.1, omega = 1.0;  // circular
    double ux = 0.0, uy = 0.0;         // uniform spatial velocity
    double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
    int nx = 11, ny = 11;
    double t_slice = 1.0;
    std::string direction = "retarded";

    // [validate]
    std::string suite = "all";

    std::string raw;  // verbatim file text, hashed into manifests
};

/// Thrown on malformed configs; maps to the config-error exit code.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

SimConfig parse_config_text(const std::string& text);
SimConfig load_config(const std::string& path);

/// FNV-1a hash of the verbatim config text, as a hex string.
std::string config_hash(const std::string& text);

PrehistoryPolicy parse_prehistory(const std::string& spec);

DynamicsConfig to_dynamics(const SimConfig& c);

}  // namespace edtail
