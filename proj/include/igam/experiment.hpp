#pragma once

#include "igam/config.hpp"

#include <string>
#include <vector>

namespace igam {

struct ExperimentResult {
    std::string kind;
    std::vector<std::string> outputs; ///< files written, relative to outdir
};

/// Run one configured experiment and write its CSV outputs plus a run.json
/// manifest into `outdir` (created if missing).
ExperimentResult run_experiment(const Config& cfg, const std::string& outdir);

} // namespace igam
