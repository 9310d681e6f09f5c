#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "snls/analysis.hpp"
#include "snls/dynamics.hpp"

namespace snls {

struct InitialSpec {
    std::string kind = "gaussian"; // gaussian, plane_wave, zero, snapshot
    double amplitude = 1.0;
    double width = 1.0;
    std::array<double, 3> center{0.0, 0.0, 0.0};
    std::array<double, 3> wavenumber{0.0, 0.0, 0.0};
    std::string path; // snapshot file
};

struct EnsembleSpec {
    int size = 1;
    int workers = 1;
    std::uint64_t base_seed = 0;
    bool write_paths = false;
};

struct TailSpec {
    double p = 2.0;
    double t_min = 0.0; // 0 selects horizon/8
    double t_max = 0.0; // 0 selects horizon/2
    int points = 9;
    int paths = 100;
    int stride = 1;
};

struct ScatterSpec {
    std::vector<double> checkpoints{5.0, 10.0, 20.0, 40.0};
    NormKind norm = NormKind::Sigma;
    std::string target = "sigma_scattering"; // window id whose hypotheses are checked, or none
};

struct GrowthSpec {
    std::vector<double> taus{0.5, 1.0, 2.0, 4.0, 8.0};
};

struct ExperimentConfig {
    std::string experiment = "simulate";
    SimConfig sim;
    InitialSpec initial;
    EnsembleSpec ensemble;
    TailSpec tail;
    ScatterSpec scatter;
    GrowthSpec growth;
    std::string output_dir = "out";
    bool strict = false;
    std::vector<std::string> warnings;
};

// Flat "key = value" text, '#' comments, strict key set.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<text>");
ExperimentConfig load_config(const std::string& path);

// Re-run cross-checks (hypotheses, referenced files) after CLI overrides.
void finalize(ExperimentConfig& cfg);

// Every key with its materialized value, sorted.
std::string echo(const ExperimentConfig& cfg);
// As echo, minus execution-only keys (workers, output dir); input of the hash.
std::string canonical_text(const ExperimentConfig& cfg);
std::uint64_t fnv1a64(const std::string& s);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Effective power-law decay exponent of the noise envelope (inf for compact support).
double effective_alpha(const SimConfig& sim);

Field make_initial(const ExperimentConfig& cfg);

// Documented key table: name, default, meaning.
struct KeyDoc {
    std::string key;
    std::string fallback;
    std::string meaning;
};
const std::vector<KeyDoc>& config_keys();

} // namespace snls
