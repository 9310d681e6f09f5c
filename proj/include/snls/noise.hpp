#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "snls/field.hpp"

namespace snls {

enum class PhiKind { gaussian, gaussian_times_poly, zero };
enum class EnvelopeKind { power_law, indicator, constant, zero };

struct PhiSpec {
    PhiKind kind = PhiKind::gaussian;
    double width = 1.0;
    double amplitude = 1.0;
    std::array<double, 3> center{0.0, 0.0, 0.0};
    bool normalize = false; // rescale so that ||phi||_2 = amplitude
};

struct EnvelopeSpec {
    EnvelopeKind kind = EnvelopeKind::constant;
    double alpha = 3.0;
    double t0 = 0.0;
    double t1 = 1.0;
    double c = 1.0;
};

struct NoiseSpec {
    PhiSpec phi;
    EnvelopeSpec g;
    std::uint64_t seed = 0;
};

void validate(const NoiseSpec& spec);

Field make_profile(const PhiSpec& spec, const GridSpec& grid);

double g_value(const EnvelopeSpec& g, double t);

// Closed-form integral of g^2 over [a, b] (b may be infinite).
double g_squared_integral(const EnvelopeSpec& g, double a, double b);

std::string to_string(PhiKind k);
std::string to_string(EnvelopeKind k);
PhiKind phi_kind_from(const std::string& s);
EnvelopeKind envelope_kind_from(const std::string& s);

// Counter-based normal variates: value depends only on (seed, counter).
std::uint64_t splitmix64(std::uint64_t x);
double standard_normal(std::uint64_t seed, std::uint64_t counter);

// Seed of path `index` in an ensemble with base seed `base`.
std::uint64_t path_seed(std::uint64_t base, std::uint64_t index);

// Brownian increments on the uniform partition t_k = k dt of [0, horizon].
class NoisePath {
public:
    NoisePath(NoiseSpec spec, double horizon, double dt, std::vector<double> increments);

    const NoiseSpec& spec() const { return spec_; }
    double dt() const { return dt_; }
    double horizon() const { return horizon_; }
    std::size_t steps() const { return increments_.size(); }
    double time(std::size_t k) const { return static_cast<double>(k) * dt_; }
    std::span<const double> increments() const { return increments_; }
    double g(std::size_t k) const { return g_value(spec_.g, time(k)); }

    // Sum groups of `factor` consecutive increments (coarser partition, same path).
    NoisePath coarsen(int factor) const;
    NoisePath scaled(double factor) const;
    NoisePath with_increment(std::size_t k, double value) const;

    // Partition index of time t, or throws when t is off the partition.
    std::size_t index_of(double t) const;

private:
    NoiseSpec spec_;
    double horizon_;
    double dt_;
    std::vector<double> increments_;
};

NoisePath sample_path(const NoiseSpec& spec, double horizon, double dt);

// z(t) = i sum_{t_k < t} S(t - t_k) phi g(t_k) dB_k
Field stochastic_convolution(const NoisePath& path, const Field& phi, double t);
// z(t_k) for every partition index k = 0..steps.
std::vector<Field> stochastic_convolution_series(const NoisePath& path, const Field& phi);

// z_*(t) = -i sum_{t_k >= t} S(t - t_k) phi g(t_k) dB_k, truncated at the path horizon.
Field tail_convolution(const NoisePath& path, const Field& phi, double t);
std::vector<Field> tail_series(const NoisePath& path, const Field& phi);

// Expected squared L2 norm of the part of the tail beyond the horizon.
double tail_truncation_bound(const NoisePath& path, const Field& phi);

// sup_{s >= t} ||z_*(s)||_{W^{1,p}} over the partition, for each requested t.
std::vector<double> tail_sup_norms(const NoisePath& path, const Field& phi, double p,
                                   std::span<const double> times, int sample_stride = 1);

struct TailFitWindow {
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 9;
};

struct TailDecayFit {
    double median_slope = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    std::vector<double> slopes;
    std::vector<double> fit_times;
    double truncation_bound = 0.0;
};

TailDecayFit tail_decay_fit(std::span<const NoisePath> paths, const Field& phi, double p,
                            const TailFitWindow& window, int sample_stride = 1);

} // namespace snls
