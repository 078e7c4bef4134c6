#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "phaseseed/measurement.hpp"

namespace phaseseed::cli {

/// Scalar metrics collected into sweep summaries; NaN when not applicable.
struct Metrics {
    static constexpr double none = std::numeric_limits<double>::quiet_NaN();
    double jitter_std = none;    ///< [s]
    double visibility = none;
    double cluster_std = none;   ///< largest cluster circular std [rad]
    double min_entropy = none;   ///< [bits per sample]
    double phase_slips = none;
};

struct Artifact {
    std::string name;
    std::string bytes;
};

struct RunResult {
    std::vector<Artifact> files;  ///< report.txt is always last
    Report report;
    Metrics metrics;
    std::vector<std::string> warnings;
};

/// Runs the configured scenario end to end.  All randomness derives from
/// cfg.seed through derive_seed(seed, component).
RunResult run_scenario(const RunConfig& cfg);

/// Derived quantities printed by `validate`.
void describe(const RunConfig& cfg, std::ostream& os);

}  // namespace phaseseed::cli
