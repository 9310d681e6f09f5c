#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snls/field.hpp"
#include "snls/functionals.hpp"
#include "snls/noise.hpp"
#include "snls/norms.hpp"

namespace snls {

enum class Equation { snls, deterministic, random_shifted, transformed };
enum class BoundaryGuard { strict, warn, off };

std::string to_string(Equation e);
Equation equation_from(const std::string& s);
std::string to_string(BoundaryGuard g);
BoundaryGuard boundary_guard_from(const std::string& s);

struct SimConfig {
    GridSpec grid;
    double sigma = 1.0;
    double dt = 1e-3;
    double t_end = 0.0;
    std::optional<NoiseSpec> noise;
    int snapshot_stride = 10;
    Equation equation = Equation::deterministic;
    BoundaryGuard guard = BoundaryGuard::strict;
    bool linear_only = false;     // drop the |u|^{2 sigma} u term
    double noise_horizon = 0.0;   // T_inf of the noise path; 0 means t_end
    bool record_integrands = true;
};

void validate(const SimConfig& cfg);
std::size_t step_count(const SimConfig& cfg);

struct Trajectory {
    SimConfig config;
    std::vector<double> times;
    std::vector<FunctionalRecord> series;
    std::vector<TimedField> snapshots;
    std::shared_ptr<const NoisePath> noise_path;
    std::optional<Field> phi;
    std::vector<NoiseIntegrands> integrands; // one per step, at the left endpoint
    std::vector<std::string> warnings;

    const Field& final_field() const { return snapshots.back().field; }
};

// One Strang step: half nonlinear phase, free propagation, half nonlinear phase.
Field step_deterministic(const Field& u, double dt, double sigma);

// step_deterministic followed by the additive kick i S(dt) phi g dB.
Field step_snls(const Field& u, double dt, double sigma, const Field& phi, double g, double dB);

// Noise path is sampled from cfg.noise when not given.
Trajectory evolve(const SimConfig& cfg, const Field& u0, std::shared_ptr<const NoisePath> path = nullptr);

// Shifted equation i u_t - Lap u + |u + z|^{2s}(u + z) = 0 with z frozen on the partition:
// `shift[k]` is z at t_k and is carried by the free flow inside each step. Empty means z = 0.
Trajectory evolve_random(const SimConfig& cfg, const Field& u0, std::span<const Field> shift);

// Transformed equation with coefficient (1-t)^{sigma n - 2} on [0, t_end], t_end < 1 - 10 dt.
Trajectory evolve_transformed(const SimConfig& cfg, const Field& u0, std::span<const Field> shift);

} // namespace snls
