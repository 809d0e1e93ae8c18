#include "edtail/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace edtail {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_num(const std::string& key, const std::string& val) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(val, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": " + val);
    }
    if (pos != val.size())
        throw ConfigError("config: bad numeric value for " + key + ": " + val);
    return out;
}

int parse_int(const std::string& key, const std::string& val) {
    const double d = parse_num(key, val);
    const int i = static_cast<int>(d);
    if (d != i) throw ConfigError("config: " + key + " must be an integer");
    return i;
}

bool parse_onoff(const std::string& key, const std::string& val) {
    if (val == "on" || val == "true") return true;
    if (val == "off" || val == "false") return false;
    throw ConfigError("config: " + key + " must be on or off");
}

}  // namespace

PrehistoryPolicy parse_prehistory(const std::string& spec) {
    if (spec == "include") return PrehistoryPolicy::include_asymptote();
    if (spec.rfind("truncate:", 0) == 0)
        return PrehistoryPolicy::truncate_at(parse_num("prehistory", spec.substr(9)));
    throw ConfigError("config: prehistory must be 'include' or 'truncate:<tau0>'");
}

SimConfig parse_config_text(const std::string& text) {
    SimConfig c;
    c.raw = text;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("config: malformed section at line " + std::to_string(lineno));
            section = s.substr(1, s.size() - 2);
            if (section != "particle" && section != "field" && section != "integrator" &&
                section != "output" && section != "fieldmap" && section != "validate")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "particle.e") c.e = parse_num(qual, val);
        else if (qual == "particle.m0") c.m0 = parse_num(qual, val);
        else if (qual == "field.E") c.E = parse_num(qual, val);
        else if (qual == "field.E2") c.E2 = parse_num(qual, val);
        else if (qual == "field.H") c.H = parse_num(qual, val);
        else if (qual == "field.tau_on") c.tau_on = parse_num(qual, val);
        else if (qual == "field.tau_off") c.tau_off = parse_num(qual, val);
        else if (qual == "integrator.h") c.h = parse_num(qual, val);
        else if (qual == "integrator.tau_end") c.tau_end = parse_num(qual, val);
        else if (qual == "integrator.quad_tol") c.quad_tol = parse_num(qual, val);
        else if (qual == "integrator.prehistory") { parse_prehistory(val); c.prehistory = val; }
        else if (qual == "integrator.selfforce") c.selfforce = parse_onoff(qual, val);
        else if (qual == "integrator.coarsen") c.coarsen = parse_onoff(qual, val);
        else if (qual == "output.trace") c.trace_path = val;
        else if (qual == "output.ledger") c.ledger_path = val;
        else if (qual == "output.field") c.field_path = val;
        else if (qual == "fieldmap.worldline") c.worldline = val;
        else if (qual == "fieldmap.accel") c.accel = parse_num(qual, val);
        else if (qual == "fieldmap.radius") c.radius = parse_num(qual, val);
        else if (qual == "fieldmap.omega") c.omega = parse_num(qual, val);
        else if (qual == "fieldmap.ux") c.ux = parse_num(qual, val);
        else if (qual == "fieldmap.uy") c.uy = parse_num(qual, val);
        else if (qual == "fieldmap.xmin") c.xmin = parse_num(qual, val);
        else if (qual == "fieldmap.xmax") c.xmax = parse_num(qual, val);
        else if (qual == "fieldmap.ymin") c.ymin = parse_num(qual, val);
        else if (qual == "fieldmap.ymax") c.ymax = parse_num(qual, val);
        else if (qual == "fieldmap.nx") c.nx = parse_int(qual, val);
        else if (qual == "fieldmap.ny") c.ny = parse_int(qual, val);
        else if (qual == "fieldmap.t") c.t_slice = parse_num(qual, val);
        else if (qual == "fieldmap.direction") c.direction = val;
        else if (qual == "validate.suite") c.suite = val;
        else throw ConfigError("config: unknown key " + qual);
    }
    if (c.worldline != "static" && c.worldline != "uniform" &&
        c.worldline != "hyperbolic" && c.worldline != "circular")
        throw ConfigError("config: unknown worldline family " + c.worldline);
    if (c.direction != "retarded" && c.direction != "advanced")
        throw ConfigError("config: direction must be retarded or advanced");
    if (!(c.m0 > 0.0)) throw ConfigError("config: m0 must be positive");
    if (!(c.h > 0.0)) throw ConfigError("config: h must be positive");
    if (!(c.tau_end > 0.0)) throw ConfigError("config: tau_end must be positive");
    if (!(c.quad_tol > 0.0 && c.quad_tol <= 1e-2))
        throw ConfigError("config: quad_tol must lie in (0, 1e-2]");
    if (c.tau_on > c.tau_off) throw ConfigError("config: tau_on must not exceed tau_off");
    if (c.nx < 1 || c.ny < 1) throw ConfigError("config: grid resolution must be >= 1");
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DynamicsConfig to_dynamics(const SimConfig& c) {
    DynamicsConfig d;
    d.e = c.e;
    d.m0 = c.m0;
    d.h = c.h;
    d.tau_end = c.tau_end;
    d.quad_tol = c.quad_tol;
    d.self_force_on = c.selfforce;
    d.prehistory = parse_prehistory(c.prehistory);
    if (c.E != 0.0 || c.E2 != 0.0 || c.H != 0.0)
        d.external = ExternalField::constant({c.E, c.E2, c.H}, c.tau_on, c.tau_off);
    return d;
}

}  // namespace edtail
