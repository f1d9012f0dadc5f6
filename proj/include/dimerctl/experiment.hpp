#pragma once

#include <filesystem>
#include <vector>

#include "dimerctl/config.hpp"

namespace dimerctl {

struct ExperimentResult {
    std::vector<std::filesystem::path> outputs;
};

/// Validates the whole config, creates the output directory, runs the
/// experiment and writes its artifacts (CSV tables, SVG figures, text
/// reports). No file is touched if validation fails. Outputs are
/// deterministic given the config and seed.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace dimerctl
