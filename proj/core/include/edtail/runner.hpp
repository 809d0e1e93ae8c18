#pragma once

#include <memory>
#include <string>

#include "edtail/config.hpp"
#include "edtail/field_eval.hpp"
#include "edtail/helium_map.hpp"
#include "edtail/worldline.hpp"

// Artifact-producing runs behind the CLI subcommands, factored out so the
// validation suite can exercise the exact same code paths in-process.

namespace edtail {

/// Worldline family selected by the [fieldmap] section.
std::unique_ptr<Worldline> make_worldline(const SimConfig& c);

/// simulate: trace CSV + ledger CSV + JSON manifest in out_dir.
/// Returns the manifest path.
std::string run_simulate(const SimConfig& c, const std::string& out_dir);

/// fieldmap: field CSV (x0,x1,x2,E1,E2,H,quad_error) + manifest in out_dir.
/// Grid points on the worldline get quad_error = nan and the run continues.
std::string run_fieldmap(const SimConfig& c, const std::string& out_dir,
                         int threads = 1);

/// convert: field-map CSV -> film-state CSV (x0,x1,x2,v1,v2,rho), or the
/// inverse when invert is set.
void run_convert(const std::string& in_csv, const std::string& out_csv,
                 const FilmParameters& p, bool invert);

}  // namespace edtail
