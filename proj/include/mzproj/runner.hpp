#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mzproj/config.hpp"

namespace mzproj::runner {

struct RunResult {
    nlohmann::ordered_json manifest;
    int exit_code = 0;                 // 0 clean, 3 exploratory output
    std::vector<std::string> outputs;  // data files written under cfg.out
};

// Executes one resolved + validated configuration: runs the command, writes
// its data files and manifest.json into cfg.out, and returns the manifest.
// All randomness is pre-keyed, so the data files are byte-identical across
// reruns and worker counts. Throws config::ConfigError for I/O problems.
RunResult run_experiment(const config::ExperimentConfig& cfg);

}  // namespace mzproj::runner
