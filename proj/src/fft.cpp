#include "snls/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "snls/errors.hpp"

namespace snls {

namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// Plans are keyed by shape only; execution goes through the new-array API
// so one plan serves every buffer of that shape, from any thread.
const PlanPair& plans_for(int dim, int points) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({dim, points});
    if (it != cache.end()) return it->second;

    int shape[3] = {points, points, points};
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(points);
    fftw_complex* buf = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.forward = fftw_plan_dft(dim, shape, buf, buf, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft(dim, shape, buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (!p.forward || !p.backward) throw NumericalError("FFTW failed to create a plan");
    return cache.emplace(std::make_pair(dim, points), p).first->second;
}

fftw_complex* as_fftw(std::vector<cplx>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

} // namespace

void fft_forward(const GridSpec& grid, std::vector<cplx>& data) {
    const auto& p = plans_for(grid.dim(), grid.points());
    fftw_execute_dft(p.forward, as_fftw(data), as_fftw(data));
}

void fft_inverse(const GridSpec& grid, std::vector<cplx>& data) {
    const auto& p = plans_for(grid.dim(), grid.points());
    fftw_execute_dft(p.backward, as_fftw(data), as_fftw(data));
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& v : data) v *= scale;
}

std::vector<cplx> spectrum(const Field& field) {
    std::vector<cplx> c = field.data();
    fft_forward(field.grid(), c);
    return c;
}

Field from_spectrum(const GridSpec& grid, std::vector<cplx> coeffs) {
    fft_inverse(grid, coeffs);
    return Field(grid, std::move(coeffs));
}

Field fourier_multiply(const Field& field, const std::vector<cplx>& multiplier) {
    auto c = spectrum(field);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= multiplier[i];
    return from_spectrum(field.grid(), std::move(c));
}

Field derivative(const Field& field, int axis) {
    const auto& g = field.grid();
    if (axis < 0 || axis >= g.dim()) throw ValidationError("derivative axis out of range");
    auto c = spectrum(field);
    const auto& xi = g.frequencies();
    const int nyq = g.points() / 2;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int j = g.axis_index(i, axis);
        c[i] *= (j == nyq) ? cplx{} : cplx(0.0, xi[j]);
    }
    return from_spectrum(g, std::move(c));
}

std::vector<Field> gradient(const Field& field) {
    std::vector<Field> out;
    out.reserve(field.grid().dim());
    for (int a = 0; a < field.grid().dim(); ++a) out.push_back(derivative(field, a));
    return out;
}

Field laplacian(const Field& field) {
    auto c = spectrum(field);
    const auto& k2 = field.grid().frequency_squared();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= -k2[i];
    return from_spectrum(field.grid(), std::move(c));
}

double kinetic_integral(const Field& field) {
    const auto c = spectrum(field);
    const auto& k2 = field.grid().frequency_squared();
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += k2[i] * std::norm(c[i]);
    return s * field.grid().cell_volume() / static_cast<double>(field.size());
}

double high_frequency_fraction(const Field& field) {
    const auto c = spectrum(field);
    const auto& g = field.grid();
    const int N = g.points();
    double total = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double e = std::norm(c[i]);
        total += e;
        bool high = false;
        for (int a = 0; a < g.dim() && !high; ++a) {
            int j = g.axis_index(i, a);
            if (j >= N / 2) j -= N;
            high = 3 * std::abs(j) > N;
        }
        if (high) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace snls
