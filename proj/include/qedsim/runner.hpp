// runner.hpp — Executes a validated RunConfig and writes the results table
// (CSV, 17 significant digits) plus a JSON run manifest echoing the resolved
// configuration. Outputs for the same config are byte-identical across runs.

#pragma once

#include <filesystem>

#include "qedsim/config.hpp"

namespace qedsim {

struct RunOutcome {
    // 0 success, 2 validation error, 3 numerical abort (partials removed)
    int exit_code = 0;
    std::string error;
    std::filesystem::path csv_path;
    std::filesystem::path manifest_path;
    Json manifest;
};

RunOutcome run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir);

// Parse + run; maps ConfigError to exit 2 without touching the filesystem.
RunOutcome run_config_text(const std::string& text, const std::filesystem::path& out_dir);

std::string format_number(double v); // %.17g

} // namespace qedsim
