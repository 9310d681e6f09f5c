#include "snls/noise.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "snls/errors.hpp"
#include "snls/fft.hpp"
#include "snls/norms.hpp"
#include "snls/operators.hpp"

namespace snls {

void validate(const NoiseSpec& spec) {
    if (!(spec.phi.amplitude >= 0.0)) throw ValidationError("noise.phi.amplitude must be >= 0");
    if (spec.phi.kind != PhiKind::zero && !(spec.phi.width > 0.0))
        throw ValidationError("noise.phi.width must be positive");
    if (spec.g.kind == EnvelopeKind::power_law && !(spec.g.alpha > 0.0))
        throw ValidationError("noise.g.alpha must be positive");
    if (spec.g.kind == EnvelopeKind::indicator && !(spec.g.t1 >= spec.g.t0 && spec.g.t0 >= 0.0))
        throw ValidationError("noise.g.t0/t1 must satisfy 0 <= t0 <= t1");
}

Field make_profile(const PhiSpec& spec, const GridSpec& grid) {
    if (spec.kind == PhiKind::zero || spec.amplitude == 0.0) return Field(grid);
    const double w = spec.width;
    const bool poly = spec.kind == PhiKind::gaussian_times_poly;
    Field phi = Field::sample(grid, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) r2 += (x[a] - spec.center[a]) * (x[a] - spec.center[a]);
        r2 /= w * w;
        const double base = std::exp(-0.5 * r2);
        return cplx(poly ? r2 * base : base, 0.0);
    });
    double scale = spec.amplitude;
    if (spec.normalize) {
        const double n = lp_norm(phi, 2.0);
        if (n == 0.0) throw ValidationError("noise profile vanishes on the grid");
        scale /= n;
    }
    phi *= scale;
    return phi;
}

double g_value(const EnvelopeSpec& g, double t) {
    switch (g.kind) {
    case EnvelopeKind::power_law: return std::pow(1.0 + t * t, -0.5 * g.alpha);
    case EnvelopeKind::indicator: return (t >= g.t0 && t < g.t1) ? 1.0 : 0.0;
    case EnvelopeKind::constant: return g.c;
    case EnvelopeKind::zero: return 0.0;
    }
    return 0.0;
}

namespace {

// int_T^inf (1+t^2)^{-alpha} dt = (1/2) B_x(alpha - 1/2, 1/2), x = 1/(1+T^2)
double power_tail(double alpha, double T) {
    if (!(alpha > 0.5)) return kInf;
    const double x = 1.0 / (1.0 + T * T);
    return 0.5 * boost::math::beta(alpha - 0.5, 0.5, x);
}

} // namespace

double g_squared_integral(const EnvelopeSpec& g, double a, double b) {
    if (!(b >= a)) throw ValidationError("envelope integral needs a <= b");
    switch (g.kind) {
    case EnvelopeKind::zero: return 0.0;
    case EnvelopeKind::constant:
        if (g.c == 0.0) return 0.0;
        return std::isinf(b) ? kInf : g.c * g.c * (b - a);
    case EnvelopeKind::indicator: return std::max(0.0, std::min(b, g.t1) - std::max(a, g.t0));
    case EnvelopeKind::power_law: {
        const double ta = power_tail(g.alpha, a);
        if (std::isinf(b)) return ta;
        return ta - power_tail(g.alpha, b);
    }
    }
    return 0.0;
}

std::string to_string(PhiKind k) {
    switch (k) {
    case PhiKind::gaussian: return "gaussian";
    case PhiKind::gaussian_times_poly: return "gaussian_times_poly";
    case PhiKind::zero: return "zero";
    }
    return "?";
}

std::string to_string(EnvelopeKind k) {
    switch (k) {
    case EnvelopeKind::power_law: return "power_law";
    case EnvelopeKind::indicator: return "indicator";
    case EnvelopeKind::constant: return "constant";
    case EnvelopeKind::zero: return "zero";
    }
    return "?";
}

PhiKind phi_kind_from(const std::string& s) {
    if (s == "gaussian") return PhiKind::gaussian;
    if (s == "gaussian_times_poly") return PhiKind::gaussian_times_poly;
    if (s == "zero") return PhiKind::zero;
    throw ValidationError("unknown phi kind '" + s + "'");
}

EnvelopeKind envelope_kind_from(const std::string& s) {
    if (s == "power_law") return EnvelopeKind::power_law;
    if (s == "indicator") return EnvelopeKind::indicator;
    if (s == "constant") return EnvelopeKind::constant;
    if (s == "zero") return EnvelopeKind::zero;
    throw ValidationError("unknown envelope kind '" + s + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

// Uniform in (0, 1) from the top 53 bits.
double uniform_open(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

} // namespace

double standard_normal(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t key = splitmix64(seed);
    const double u1 = uniform_open(splitmix64(key ^ (2 * counter)));
    const double u2 = uniform_open(splitmix64(key ^ (2 * counter + 1) ^ 0xd1b54a32d192ed03ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t path_seed(std::uint64_t base, std::uint64_t index) { return splitmix64(base ^ splitmix64(index + 1)); }

NoisePath::NoisePath(NoiseSpec spec, double horizon, double dt, std::vector<double> increments)
    : spec_(std::move(spec)), horizon_(horizon), dt_(dt), increments_(std::move(increments)) {}

NoisePath NoisePath::coarsen(int factor) const {
    if (factor < 1 || increments_.size() % static_cast<std::size_t>(factor) != 0)
        throw ValidationError("coarsening factor must divide the step count");
    std::vector<double> out(increments_.size() / factor, 0.0);
    for (std::size_t k = 0; k < out.size(); ++k)
        for (int j = 0; j < factor; ++j) out[k] += increments_[k * factor + j];
    return NoisePath(spec_, horizon_, dt_ * factor, std::move(out));
}

NoisePath NoisePath::scaled(double factor) const {
    std::vector<double> out = increments_;
    for (auto& v : out) v *= factor;
    return NoisePath(spec_, horizon_, dt_, std::move(out));
}

NoisePath NoisePath::with_increment(std::size_t k, double value) const {
    std::vector<double> out = increments_;
    out.at(k) = value;
    return NoisePath(spec_, horizon_, dt_, std::move(out));
}

std::size_t NoisePath::index_of(double t) const {
    const double r = t / dt_;
    const double k = std::round(r);
    if (!(std::abs(r - k) <= 1e-9 * std::max(1.0, r)) || k < 0 || k > static_cast<double>(steps()))
        throw ValidationError("time " + std::to_string(t) + " is not on the noise partition");
    return static_cast<std::size_t>(k);
}

NoisePath sample_path(const NoiseSpec& spec, double horizon, double dt) {
    validate(spec);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("noise partition needs dt > 0");
    if (!(horizon >= 0.0)) throw ValidationError("noise horizon must be >= 0");
    const double r = horizon / dt;
    const double k = std::round(r);
    if (std::abs(r - k) > 1e-9 * std::max(1.0, r))
        throw ValidationError("noise horizon must be a multiple of dt");
    std::vector<double> inc(static_cast<std::size_t>(k));
    const double sd = std::sqrt(dt);
    for (std::size_t j = 0; j < inc.size(); ++j) inc[j] = sd * standard_normal(spec.seed, j);
    return NoisePath(spec, horizon, dt, std::move(inc));
}

namespace {

void check_profile(const NoisePath& path, const Field& phi) {
    (void)path;
    if (!phi.all_finite()) throw ValidationError("noise profile is not finite");
}

} // namespace

std::vector<Field> stochastic_convolution_series(const NoisePath& path, const Field& phi) {
    check_profile(path, phi);
    const auto& grid = phi.grid();
    const auto phat = spectrum(phi);
    const auto& k2 = grid.frequency_squared();
    std::vector<cplx> acc(phat.size(), cplx{});
    std::vector<Field> out;
    out.reserve(path.steps() + 1);
    out.emplace_back(grid);
    for (std::size_t k = 0; k < path.steps(); ++k) {
        const double w = path.g(k) * path.increments()[k];
        const double tk = path.time(k);
        if (w != 0.0)
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * std::polar(1.0, -tk * k2[i]) * phat[i];
        const double t = path.time(k + 1);
        std::vector<cplx> c(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) c[i] = cplx(0.0, 1.0) * std::polar(1.0, t * k2[i]) * acc[i];
        out.push_back(from_spectrum(grid, std::move(c)));
    }
    return out;
}

Field stochastic_convolution(const NoisePath& path, const Field& phi, double t) {
    check_profile(path, phi);
    const std::size_t m = path.index_of(t);
    const auto& grid = phi.grid();
    const auto phat = spectrum(phi);
    const auto& k2 = grid.frequency_squared();
    std::vector<cplx> acc(phat.size(), cplx{});
    for (std::size_t k = 0; k < m; ++k) {
        const double w = path.g(k) * path.increments()[k];
        if (w == 0.0) continue;
        const double tk = path.time(k);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * std::polar(1.0, -tk * k2[i]) * phat[i];
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= cplx(0.0, 1.0) * std::polar(1.0, t * k2[i]);
    return from_spectrum(grid, std::move(acc));
}

namespace {

// Calls visit(k, A_k) for k = steps..0 where A_k = sum_{j >= k} S(-t_j) phi_hat g_j dB_j.
template <class Visit>
void backward_sweep(const NoisePath& path, const Field& phi, std::size_t stop, Visit&& visit) {
    const auto& grid = phi.grid();
    const auto phat = spectrum(phi);
    const auto& k2 = grid.frequency_squared();
    std::vector<cplx> acc(phat.size(), cplx{});
    visit(path.steps(), acc);
    for (std::size_t k = path.steps(); k-- > stop;) {
        const double w = path.g(k) * path.increments()[k];
        const double tk = path.time(k);
        if (w != 0.0)
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * std::polar(1.0, -tk * k2[i]) * phat[i];
        visit(k, acc);
    }
}

Field tail_from_accumulator(const GridSpec& grid, const std::vector<cplx>& acc, double t) {
    const auto& k2 = grid.frequency_squared();
    std::vector<cplx> c(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) c[i] = cplx(0.0, -1.0) * std::polar(1.0, t * k2[i]) * acc[i];
    return from_spectrum(grid, std::move(c));
}

} // namespace

Field tail_convolution(const NoisePath& path, const Field& phi, double t) {
    check_profile(path, phi);
    if (t > path.horizon() * (1.0 + 1e-12)) throw ValidationError("tail requested beyond the noise horizon");
    // first partition index with t_k >= t
    std::size_t first = static_cast<std::size_t>(std::max(0.0, std::ceil(t / path.dt() - 1e-9)));
    first = std::min(first, path.steps());
    Field out(phi.grid());
    backward_sweep(path, phi, first, [&](std::size_t k, const std::vector<cplx>& acc) {
        if (k == first) out = tail_from_accumulator(phi.grid(), acc, t);
    });
    return out;
}

std::vector<Field> tail_series(const NoisePath& path, const Field& phi) {
    check_profile(path, phi);
    std::vector<Field> out(path.steps() + 1);
    backward_sweep(path, phi, 0, [&](std::size_t k, const std::vector<cplx>& acc) {
        out[k] = tail_from_accumulator(phi.grid(), acc, path.time(k));
    });
    return out;
}

double tail_truncation_bound(const NoisePath& path, const Field& phi) {
    const double m = lp_norm(phi, 2.0);
    return m * m * g_squared_integral(path.spec().g, path.horizon(), kInf);
}

std::vector<double> tail_sup_norms(const NoisePath& path, const Field& phi, double p,
                                   std::span<const double> times, int sample_stride) {
    if (sample_stride < 1) throw ValidationError("sample stride must be >= 1");
    const auto& grid = phi.grid();
    const auto& k2 = grid.frequency_squared();
    const double scale = grid.cell_volume() / static_cast<double>(grid.size());
    std::vector<double> norm_at(path.steps() + 1, 0.0);
    std::vector<bool> sampled(path.steps() + 1, false);
    backward_sweep(path, phi, 0, [&](std::size_t k, const std::vector<cplx>& acc) {
        if (k % static_cast<std::size_t>(sample_stride) != 0 && k != path.steps()) return;
        sampled[k] = true;
        if (p == 2.0) {
            // S(t) is unitary on H^1, so the norm is read off the accumulator directly
            double s = 0.0;
            for (std::size_t i = 0; i < acc.size(); ++i) s += (1.0 + k2[i]) * std::norm(acc[i]);
            norm_at[k] = std::sqrt(s * scale);
        } else {
            norm_at[k] = sobolev_norm(tail_from_accumulator(grid, acc, path.time(k)), p);
        }
    });
    // suffix maximum over sampled indices
    std::vector<double> sup(path.steps() + 2, 0.0);
    for (std::size_t k = path.steps() + 1; k-- > 0;)
        sup[k] = std::max(sup[k + 1], sampled[k] ? norm_at[k] : 0.0);
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        if (t > path.horizon() * (1.0 + 1e-12) || t < 0.0)
            throw ValidationError("tail sup requested outside [0, horizon]");
        const auto first = std::min(path.steps(), static_cast<std::size_t>(std::ceil(t / path.dt() - 1e-9)));
        out.push_back(sup[first]);
    }
    return out;
}

TailDecayFit tail_decay_fit(std::span<const NoisePath> paths, const Field& phi, double p,
                            const TailFitWindow& window, int sample_stride) {
    if (paths.size() < 100) throw ValidationError("tail decay fit needs at least 100 paths");
    const double T = paths.front().horizon();
    if (!(window.t_min >= T / 8.0 * (1.0 - 1e-12) && window.t_max <= T / 2.0 * (1.0 + 1e-12) &&
          window.t_max > window.t_min))
        throw ValidationError("tail fit window must lie inside [T_inf/8, T_inf/2]");
    if (window.points < 3) throw ValidationError("tail fit needs at least 3 window points");

    TailDecayFit fit;
    const double ratio = std::pow(window.t_max / window.t_min, 1.0 / (window.points - 1));
    for (int j = 0; j < window.points; ++j) {
        double t = window.t_min * std::pow(ratio, j);
        t = std::round(t / paths.front().dt()) * paths.front().dt();
        fit.fit_times.push_back(t);
    }
    std::vector<double> lx;
    for (double t : fit.fit_times) lx.push_back(0.5 * std::log1p(t * t));
    const double mx = [&] { double s = 0; for (double v : lx) s += v; return s / lx.size(); }();

    for (const auto& path : paths) {
        if (path.horizon() != T) throw ValidationError("tail fit paths must share a horizon");
        const auto sup = tail_sup_norms(path, phi, p, fit.fit_times, sample_stride);
        std::vector<double> ly;
        for (double v : sup) {
            if (!(v > 0.0)) throw NumericalError("tail norm vanishes; slope undefined (zero noise?)");
            ly.push_back(std::log(v));
        }
        double my = 0.0;
        for (double v : ly) my += v;
        my /= ly.size();
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t j = 0; j < lx.size(); ++j) {
            sxy += (lx[j] - mx) * (ly[j] - my);
            sxx += (lx[j] - mx) * (lx[j] - mx);
        }
        fit.slopes.push_back(sxy / sxx);
    }
    std::vector<double> sorted = fit.slopes;
    std::sort(sorted.begin(), sorted.end());
    auto quant = [&](double q) {
        const double pos = q * (sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(sorted.size() - 1, lo + 1);
        return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
    };
    fit.median_slope = quant(0.5);
    fit.q1 = quant(0.25);
    fit.q3 = quant(0.75);
    fit.truncation_bound = tail_truncation_bound(paths.front(), phi);
    return fit;
}

} // namespace snls
