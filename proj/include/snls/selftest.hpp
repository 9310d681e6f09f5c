#pragma once

#include <string>
#include <vector>

namespace snls {

struct SelftestOptions {
    int points = 0;               // grid points for the grid-based oracles; 0 keeps each oracle's default
    bool flip_propagator = false; // fault injection: use S(-t) wherever the oracles call S(t)
    int isometry_paths = 2000;
};

struct OracleCheck {
    std::string name;
    double tolerance = 0.0;
    double measured = 0.0;
    bool passed = false;
    std::string note;
};

struct SelftestReport {
    std::vector<OracleCheck> checks;
    std::vector<std::string> warnings;
    bool all_passed() const;
    std::string table() const;
};

SelftestReport run_selftest(const SelftestOptions& opts = {});

// Tolerance used for a grid-based oracle at a given point count.
double selftest_tolerance(const std::string& check, int points);

} // namespace snls
