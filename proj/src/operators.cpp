#include "snls/operators.hpp"

#include <cmath>
#include <numbers>

#include "snls/errors.hpp"
#include "snls/fft.hpp"

namespace snls {

std::vector<cplx> propagator_multiplier(const GridSpec& grid, double t) {
    const auto& k2 = grid.frequency_squared();
    std::vector<cplx> m(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i) m[i] = std::polar(1.0, t * k2[i]);
    return m;
}

Field propagate(const Field& field, double t) {
    if (t == 0.0) return field;
    return fourier_multiply(field, propagator_multiplier(field.grid(), t));
}

Field coordinate_multiply(const Field& field, int axis) {
    const auto& g = field.grid();
    const auto& x = g.coordinates();
    Field out = field;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= x[g.axis_index(i, axis)];
    return out;
}

std::vector<Field> apply_J(const Field& field, double t) {
    std::vector<Field> out;
    const int n = field.grid().dim();
    out.reserve(n);
    for (int a = 0; a < n; ++a) {
        Field j = coordinate_multiply(field, a);
        if (t != 0.0) {
            const Field d = derivative(field, a);
            const cplx c(0.0, -2.0 * t);
            for (std::size_t i = 0; i < j.size(); ++i) j[i] += c * d[i];
        }
        out.push_back(std::move(j));
    }
    return out;
}

Field dilate(const Field& field, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("dilation factor must be positive");
    const auto& g = field.grid();
    GridSpec target = make_grid(g.dim(), g.points(), g.box_length() / beta);
    std::vector<cplx> v = field.data();
    const double scale = std::pow(beta, 0.5 * g.dim());
    for (auto& z : v) z *= scale;
    return Field(target, std::move(v));
}

bool modulation_resolved(const GridSpec& grid, double theta) {
    return std::abs(theta) * 0.5 * grid.box_length() * grid.dx() < std::numbers::pi;
}

Field modulate(const Field& field, double theta) {
    const auto& g = field.grid();
    if (!modulation_resolved(g, theta))
        throw ValidationError("modulation phase under-resolved: |theta| (L/2) dx = " +
                              std::to_string(std::abs(theta) * 0.5 * g.box_length() * g.dx()) + " >= pi");
    if (theta == 0.0) return field;
    const auto& r2 = g.radius_squared();
    Field out = field;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::polar(1.0, 0.25 * theta * r2[i]);
    return out;
}

std::pair<Field, double> pseudo_conformal(const Field& field, const PseudoConformalMap& map) {
    const double tau = map.source_time;
    if (map.direction == MapDirection::forward) {
        if (!(tau >= 0.0)) throw ValidationError("forward pseudo-conformal map needs s >= 0");
        const double beta = 1.0 + tau;
        return {modulate(dilate(field, beta), beta), tau / beta};
    }
    if (!(tau >= 0.0 && tau < 1.0)) throw ValidationError("inverse pseudo-conformal map needs t in [0, 1)");
    const double beta = 1.0 / (1.0 - tau);
    return {dilate(modulate(field, -beta), 1.0 / beta), tau / (1.0 - tau)};
}

namespace {

// Matrix T (Nt x Ns) mapping source samples to the interpolant at target points.
std::vector<cplx> interpolation_matrix(const GridSpec& src, const GridSpec& dst) {
    const int Ns = src.points();
    const int Nt = dst.points();
    const double x0 = -0.5 * src.box_length();
    const auto& xi = src.frequencies();
    const auto& y = dst.coordinates();
    const GridSpec line = make_grid(1, Ns, src.box_length());
    std::vector<cplx> T(static_cast<std::size_t>(Nt) * Ns);
    std::vector<cplx> e(Ns);
    for (int m = 0; m < Nt; ++m) {
        // basis value e_k(y) = exp(i xi_k (y - x0)); the Nyquist mode is split as a cosine
        for (int k = 0; k < Ns; ++k) {
            const double arg = xi[k] * (y[m] - x0);
            e[k] = (k == Ns / 2) ? cplx(std::cos(arg), 0.0) : std::polar(1.0, arg);
        }
        // T_mj = (1/Ns) sum_k e_k exp(-2 pi i jk/Ns)
        fft_forward(line, e);
        for (int j = 0; j < Ns; ++j) T[static_cast<std::size_t>(m) * Ns + j] = e[j] / static_cast<double>(Ns);
    }
    return T;
}

} // namespace

Field regrid(const Field& field, const GridSpec& target) {
    const auto& src = field.grid();
    if (src.dim() != target.dim()) throw ValidationError("regrid requires matching dimensions");
    if (src.same_as(target)) return field;
    const int n = src.dim();
    const int Ns = src.points();
    const int Nt = target.points();
    const auto T = interpolation_matrix(src, target);

    // Apply T along each axis in turn; shape tracks the partially converted array.
    std::vector<int> shape(n, Ns);
    std::vector<cplx> cur = field.data();
    for (int axis = 0; axis < n; ++axis) {
        std::size_t outer = 1, inner = 1;
        for (int a = 0; a < axis; ++a) outer *= shape[a];
        for (int a = axis + 1; a < n; ++a) inner *= shape[a];
        std::vector<cplx> next(outer * Nt * inner);
        for (std::size_t o = 0; o < outer; ++o)
            for (int m = 0; m < Nt; ++m)
                for (std::size_t in = 0; in < inner; ++in) {
                    cplx s{};
                    const cplx* row = &T[static_cast<std::size_t>(m) * Ns];
                    for (int j = 0; j < Ns; ++j) s += row[j] * cur[(o * Ns + j) * inner + in];
                    next[(o * Nt + m) * inner + in] = s;
                }
        cur = std::move(next);
        shape[axis] = Nt;
    }
    return Field(target, std::move(cur));
}

} // namespace snls
