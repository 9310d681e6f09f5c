#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "snls/config.hpp"

namespace snls {

// Functionals tracked across an ensemble, in column order.
inline const std::array<const char*, 5> kTracked = {"M", "H", "V", "G", "E"};

struct SeriesStats {
    std::vector<double> mean, variance, min, max, sup_mean;
};

struct EnsembleResult {
    std::size_t paths = 0;
    std::vector<double> times;
    std::vector<std::uint64_t> seeds;
    std::array<SeriesStats, kTracked.size()> stats;
    // per path, per time: tracked values
    std::vector<std::vector<std::array<double, kTracked.size()>>> series;
    // optional per-path scalars from the extractor
    std::vector<std::vector<double>> scalars;
    std::vector<std::string> warnings;
};

using PathExtractor = std::function<std::vector<double>(const Trajectory&)>;

// Runs ensemble.size paths with seeds path_seed(base_seed, i). Results do not
// depend on ensemble.workers: every path is computed independently and folded
// in index order.
EnsembleResult run_ensemble(const ExperimentConfig& cfg, const Field& u0, const PathExtractor& extract = {});

// Folds per-path series into SeriesStats in index order.
void aggregate(EnsembleResult& r);

// Generic parallel map over [0, count) with a bounded pool; exceptions carry the index.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job);

} // namespace snls
