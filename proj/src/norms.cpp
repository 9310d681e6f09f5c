#include "snls/norms.hpp"

#include <algorithm>
#include <cmath>

#include "snls/errors.hpp"
#include "snls/fft.hpp"

namespace snls {

double lp_norm(const Field& field, double p) {
    if (!(p >= 1.0)) throw ValidationError("Lebesgue exponent must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : field.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (const auto& v : field.values()) s += std::norm(v);
        return std::sqrt(s * field.grid().cell_volume());
    }
    for (const auto& v : field.values()) s += std::pow(std::abs(v), p);
    return std::pow(s * field.grid().cell_volume(), 1.0 / p);
}

double sobolev_norm(const Field& field, double p) {
    if (!(p >= 1.0)) throw ValidationError("Sobolev exponent must be >= 1");
    if (p == 2.0) {
        const auto c = spectrum(field);
        const auto& k2 = field.grid().frequency_squared();
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += (1.0 + k2[i]) * std::norm(c[i]);
        return std::sqrt(s * field.grid().cell_volume() / static_cast<double>(field.size()));
    }
    double total = lp_norm(field, p);
    for (const auto& d : gradient(field)) total += lp_norm(d, p);
    return total;
}

double weighted_l2(const Field& field) {
    const auto& r2 = field.grid().radius_squared();
    double s = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) s += r2[i] * std::norm(field[i]);
    return std::sqrt(s * field.grid().cell_volume());
}

double sigma_norm(const Field& field) { return sobolev_norm(field, 2.0) + weighted_l2(field); }

double mixed_norm_values(std::span<const double> times, std::span<const double> norms, double q,
                         std::optional<double> horizon) {
    if (times.empty()) throw ValidationError("mixed norm of an empty series");
    if (times.size() != norms.size()) throw ValidationError("mixed norm: times and norms differ in length");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1])) throw ValidationError("mixed norm: timestamps must increase strictly");
    if (!(q >= 1.0)) throw ValidationError("time exponent must be >= 1");
    if (std::isinf(q)) return *std::max_element(norms.begin(), norms.end());

    const std::size_t K = times.size();
    double s = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        double w;
        if (k + 1 < K)
            w = times[k + 1] - times[k];
        else if (horizon)
            w = *horizon - times[k];
        else
            w = K > 1 ? times[k] - times[k - 1] : 0.0;
        if (w < 0.0) throw ValidationError("mixed norm: horizon precedes the last sample");
        s += w * std::pow(norms[k], q);
    }
    return std::pow(s, 1.0 / q);
}

double mixed_norm(std::span<const TimedField> series, const MixedNormSpec& spec, std::optional<double> horizon) {
    if (!(spec.p >= 1.0)) throw ValidationError("space exponent must be >= 1");
    if (spec.derivative_order != 0 && spec.derivative_order != 1)
        throw ValidationError("derivative order must be 0 or 1");
    std::vector<double> t, v;
    t.reserve(series.size());
    v.reserve(series.size());
    for (const auto& s : series) {
        t.push_back(s.t);
        v.push_back(spec.derivative_order == 0 ? lp_norm(s.field, spec.p) : sobolev_norm(s.field, spec.p));
    }
    return mixed_norm_values(t, v, spec.q, horizon);
}

double boundary_mass_fraction(const Field& field) {
    const auto& g = field.grid();
    const auto& x = g.coordinates();
    const double quarter = 0.25 * g.box_length();
    double total = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double m = std::norm(field[i]);
        total += m;
        bool out = false;
        for (int a = 0; a < g.dim() && !out; ++a) out = std::abs(x[g.axis_index(i, a)]) > quarter;
        if (out) outside += m;
    }
    return total > 0.0 ? outside / total : 0.0;
}

} // namespace snls
