#pragma once

#include <string>
#include <vector>

#include "snls/field.hpp"

namespace snls {

struct FunctionalRecord {
    double t = 0.0;
    double M = 0.0;         // int |u|^2
    double H = 0.0;         // (1/2)||grad u||^2 + ||u||_{2s+2}^{2s+2}/(2s+2)
    double V = 0.0;         // int |x|^2 |u|^2
    double G = 0.0;         // Im int u x.grad(conj u)
    double E = 0.0;         // ||(x - 2i(1+t) grad) u||^2 + 4/(s+1) (1+t)^2 ||u||^{2s+2}
    double E_decomp = 0.0;  // V - 4(1+t) G + 8(1+t)^2 H
    double E1_tilde = 0.0;  // 4||grad u||^2 + (1-t)^{sn-2} 4/(s+1) ||u||^{2s+2}, t < 1
    double E2_tilde = 0.0;  // (1-t)^{2-sn} E1_tilde
    double kinetic = 0.0;   // ||grad u||^2
    double potential = 0.0; // ||u||_{2s+2}^{2s+2}
};

FunctionalRecord compute_functionals(const Field& u, double t, double sigma);

// Integrands of the Ito identities at one left endpoint, without the g factors.
struct NoiseIntegrands {
    double mass_dB = 0.0;   // 2 Im int u conj(phi)
    double energy_dB = 0.0; // martingale integrand of E, coefficient of g dB
    double energy_dt = 0.0; // Ito correction of E, coefficient of g^2 dt
};

// Precomputed pieces of phi used at every step.
struct ProfileData {
    Field phi;
    std::vector<Field> grad_phi;
    double x2_phi2 = 0.0;   // int |x|^2 |phi|^2
    double im_phi_xgrad = 0.0; // Im int conj(phi) x.grad phi
    double grad_phi2 = 0.0; // int |grad phi|^2
    double phi2 = 0.0;      // int |phi|^2
};

ProfileData prepare_profile(const Field& phi);

NoiseIntegrands noise_integrands(const Field& u, double s, double sigma, const ProfileData& prof);

std::vector<std::string> functional_columns();
std::vector<double> functional_row(const FunctionalRecord& r);
FunctionalRecord functional_from_row(const std::vector<double>& row);

} // namespace snls
