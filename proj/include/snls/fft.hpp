#pragma once

#include <vector>

#include "snls/field.hpp"

namespace snls {

// Unnormalized forward DFT and normalized inverse, in place, for a grid's shape.
void fft_forward(const GridSpec& grid, std::vector<cplx>& data);
void fft_inverse(const GridSpec& grid, std::vector<cplx>& data);

std::vector<cplx> spectrum(const Field& field);
Field from_spectrum(const GridSpec& grid, std::vector<cplx> coeffs);

// Apply a real or complex multiplier m(flat index) in Fourier space.
Field fourier_multiply(const Field& field, const std::vector<cplx>& multiplier);

// Spectral partial derivative along one axis. The Nyquist mode is dropped.
Field derivative(const Field& field, int axis);
std::vector<Field> gradient(const Field& field);
Field laplacian(const Field& field);

// sum |xi|^2 |u_hat|^2 scaled as an integral, i.e. ||grad u||_2^2 by Plancherel.
double kinetic_integral(const Field& field);

// Fraction of spectral energy in modes with some |k_j| > N/3.
double high_frequency_fraction(const Field& field);

} // namespace snls
