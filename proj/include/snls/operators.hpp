#pragma once

#include <utility>
#include <vector>

#include "snls/field.hpp"

namespace snls {

// S(t) = exp(-it Laplacian): multiplier exp(+it|xi|^2).
Field propagate(const Field& field, double t);
std::vector<cplx> propagator_multiplier(const GridSpec& grid, double t);

// J(t) = x - 2it grad, one component per axis.
std::vector<Field> apply_J(const Field& field, double t);

// Multiply by x_axis.
Field coordinate_multiply(const Field& field, int axis);

// D_beta f = beta^{n/2} f(beta x): same samples scaled, box length L/beta.
Field dilate(const Field& field, double beta);

// M_theta f = exp(i theta |x|^2 / 4) f. Throws when the phase is under-resolved.
Field modulate(const Field& field, double theta);
bool modulation_resolved(const GridSpec& grid, double theta);

enum class MapDirection { forward, inverse };

struct PseudoConformalMap {
    MapDirection direction = MapDirection::forward;
    double source_time = 0.0;
};

// forward: u(s) -> u~(t), t = s/(1+s).  inverse: u~(t) -> u(s), s = t/(1-t).
std::pair<Field, double> pseudo_conformal(const Field& field, const PseudoConformalMap& map);

// Periodic trigonometric interpolant of `field` evaluated on `target`.
// Equals zero padding in frequency when both boxes have the same length.
Field regrid(const Field& field, const GridSpec& target);

} // namespace snls
