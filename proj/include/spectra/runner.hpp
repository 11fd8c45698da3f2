#ifndef SPECTRA_RUNNER_HPP
#define SPECTRA_RUNNER_HPP

#include "spectra/config.hpp"
#include "spectra/potential.hpp"

namespace spectra {

struct RunResult {
    int exit_code = 0;          // 0 ok, 1 validation error, 2 numerical failure
    nlohmann::ordered_json report;
};

/// Build the configured lattice / potential (shared with tests and demos).
Lattice lattice_from_config(const RunConfig& cfg);
Potential potential_from_config(const RunConfig& cfg, const Lattice& lat);

/// Dispatch a validated configuration, write report.json (and per-command
/// CSV tables) under cfg.out_dir, and return the report.
RunResult execute(const RunConfig& cfg);

} // namespace spectra

#endif
