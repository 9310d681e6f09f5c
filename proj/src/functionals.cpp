#include "snls/functionals.hpp"

#include <cmath>
#include <limits>

#include "snls/errors.hpp"
#include "snls/fft.hpp"
#include "snls/operators.hpp"

namespace snls {

namespace {

// |u|^{2 sigma} with 0 -> 0
double modulus_power(const cplx& u, double sigma) {
    const double a2 = std::norm(u);
    return a2 > 0.0 ? std::pow(a2, sigma) : 0.0;
}

} // namespace

FunctionalRecord compute_functionals(const Field& u, double t, double sigma) {
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
    const auto& g = u.grid();
    const double dv = g.cell_volume();
    const auto& r2 = g.radius_squared();
    const auto& x = g.coordinates();
    const int n = g.dim();
    const double beta = 1.0 + t;

    FunctionalRecord r;
    r.t = t;
    double mass = 0.0, virial = 0.0, pot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a2 = std::norm(u[i]);
        mass += a2;
        virial += r2[i] * a2;
        pot += a2 * modulus_power(u[i], sigma);
    }
    r.M = mass * dv;
    r.V = virial * dv;
    r.potential = pot * dv;
    r.kinetic = kinetic_integral(u);
    r.H = 0.5 * r.kinetic + r.potential / (2.0 * sigma + 2.0);

    double momentum = 0.0;
    double direct = 0.0;
    const auto grad = gradient(u);
    for (int a = 0; a < n; ++a) {
        const Field& d = grad[a];
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double xa = x[g.axis_index(i, a)];
            momentum += std::imag(u[i] * xa * std::conj(d[i]));
            direct += std::norm(xa * u[i] - cplx(0.0, 2.0 * beta) * d[i]);
        }
    }
    r.G = momentum * dv;
    r.E = direct * dv + 4.0 / (sigma + 1.0) * beta * beta * r.potential;
    r.E_decomp = r.V - 4.0 * beta * r.G + 8.0 * beta * beta * r.H;

    if (t < 1.0) {
        const double c = std::pow(1.0 - t, sigma * n - 2.0);
        r.E1_tilde = 4.0 * r.kinetic + c * 4.0 / (sigma + 1.0) * r.potential;
        r.E2_tilde = std::pow(1.0 - t, 2.0 - sigma * n) * r.E1_tilde;
    } else {
        r.E1_tilde = std::numeric_limits<double>::quiet_NaN();
        r.E2_tilde = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

ProfileData prepare_profile(const Field& phi) {
    ProfileData p;
    p.phi = phi;
    p.grad_phi = gradient(phi);
    const auto& g = phi.grid();
    const double dv = g.cell_volume();
    const auto& r2 = g.radius_squared();
    const auto& x = g.coordinates();
    double a = 0, b = 0, c = 0, m = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        a += r2[i] * std::norm(phi[i]);
        m += std::norm(phi[i]);
        for (int ax = 0; ax < g.dim(); ++ax) {
            b += std::imag(std::conj(phi[i]) * x[g.axis_index(i, ax)] * p.grad_phi[ax][i]);
            c += std::norm(p.grad_phi[ax][i]);
        }
    }
    p.x2_phi2 = a * dv;
    p.im_phi_xgrad = b * dv;
    p.grad_phi2 = c * dv;
    p.phi2 = m * dv;
    return p;
}

NoiseIntegrands noise_integrands(const Field& u, double s, double sigma, const ProfileData& prof) {
    const auto& g = u.grid();
    if (!g.same_as(prof.phi.grid())) throw ValidationError("noise profile grid differs from the field grid");
    const double dv = g.cell_volume();
    const auto& r2 = g.radius_squared();
    const auto& x = g.coordinates();
    const int n = g.dim();
    const double beta = 1.0 + s;
    const auto grad = gradient(u);
    const Field& phi = prof.phi;

    double im_u_phi = 0, re_u_phi = 0, im_x2 = 0, re_u_xgradphi = 0, im_grad = 0, im_pot = 0;
    double pot_phi2 = 0, sq = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const cplx uphi = u[i] * std::conj(phi[i]);
        const double w = modulus_power(u[i], sigma);
        im_u_phi += uphi.imag();
        re_u_phi += uphi.real();
        im_x2 += r2[i] * uphi.imag();
        im_pot += w * std::imag(std::conj(u[i]) * phi[i]);
        pot_phi2 += w * std::norm(phi[i]);
        const double a2 = std::norm(u[i]);
        if (a2 > 0.0) sq += (w / a2) * uphi.imag() * uphi.imag();
        for (int a = 0; a < n; ++a) {
            re_u_xgradphi += std::real(u[i] * x[g.axis_index(i, a)] * std::conj(prof.grad_phi[a][i]));
            im_grad += std::imag(std::conj(grad[a][i]) * prof.grad_phi[a][i]);
        }
    }
    NoiseIntegrands out;
    out.mass_dB = 2.0 * im_u_phi * dv;
    out.energy_dB = (2.0 * im_x2 + 4.0 * n * beta * re_u_phi + 8.0 * beta * re_u_xgradphi -
                     8.0 * beta * beta * (im_grad + im_pot)) *
                    dv;
    out.energy_dt = prof.x2_phi2 + 4.0 * beta * prof.im_phi_xgrad + 4.0 * beta * beta * prof.grad_phi2 +
                    (4.0 * beta * beta * pot_phi2 + 8.0 * sigma * beta * beta * sq) * dv;
    return out;
}

std::vector<std::string> functional_columns() {
    return {"t", "M", "H", "V", "G", "E", "E_decomp", "E1_tilde", "E2_tilde", "kinetic", "potential"};
}

std::vector<double> functional_row(const FunctionalRecord& r) {
    return {r.t, r.M, r.H, r.V, r.G, r.E, r.E_decomp, r.E1_tilde, r.E2_tilde, r.kinetic, r.potential};
}

FunctionalRecord functional_from_row(const std::vector<double>& v) {
    if (v.size() != 11) throw ValidationError("functional row needs 11 values");
    FunctionalRecord r;
    r.t = v[0];
    r.M = v[1];
    r.H = v[2];
    r.V = v[3];
    r.G = v[4];
    r.E = v[5];
    r.E_decomp = v[6];
    r.E1_tilde = v[7];
    r.E2_tilde = v[8];
    r.kinetic = v[9];
    r.potential = v[10];
    return r;
}

} // namespace snls
