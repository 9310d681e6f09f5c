#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "snls/field.hpp"

namespace snls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_norm(const Field& field, double p);

// W^{1,p}. p = 2 uses the Plancherel form ||<xi> u_hat||, other p the sum
// ||u||_p + sum_j ||d_j u||_p.
double sobolev_norm(const Field& field, double p);

// ||u||_{H^1} + || |x| u ||_2
double sigma_norm(const Field& field);

double weighted_l2(const Field& field); // || |x| u ||_2

struct MixedNormSpec {
    double q = 2.0;
    double p = 2.0;
    int derivative_order = 0;
};

struct TimedField {
    double t;
    Field field;
};

// Left-endpoint quadrature in time. The last sample's interval ends at
// `horizon` when given, otherwise it repeats the previous spacing.
double mixed_norm(std::span<const TimedField> series, const MixedNormSpec& spec,
                  std::optional<double> horizon = std::nullopt);

// Same quadrature over precomputed spatial norms.
double mixed_norm_values(std::span<const double> times, std::span<const double> norms, double q,
                         std::optional<double> horizon = std::nullopt);

// Mass of |u|^2 outside the centered half box (some |x_j| > L/4), relative to total.
double boundary_mass_fraction(const Field& field);

} // namespace snls
