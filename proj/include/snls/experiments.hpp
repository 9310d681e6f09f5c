#pragma once

#include <string>
#include <vector>

#include "snls/config.hpp"
#include "snls/report.hpp"

namespace snls {

struct Outcome {
    std::string text;   // human-readable summary
    Json result;        // structured result (also written to the output directory)
    std::vector<std::string> warnings;
    bool passed = true; // false only for a failed selftest
};

// Runs cfg.experiment and writes its files into cfg.output_dir.
Outcome run_experiment(const ExperimentConfig& cfg);

// The regimes experiment without a config: a table over representative (n, 2 sigma, alpha).
Outcome run_default_regimes(const std::string& output_dir);

struct SelftestOptions;
Outcome run_selftest_experiment(const std::string& output_dir, const SelftestOptions& opts);

} // namespace snls
