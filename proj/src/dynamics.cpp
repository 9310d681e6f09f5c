#include "snls/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "snls/errors.hpp"
#include "snls/fft.hpp"
#include "snls/operators.hpp"

namespace snls {

std::string to_string(Equation e) {
    switch (e) {
    case Equation::snls: return "snls";
    case Equation::deterministic: return "deterministic";
    case Equation::random_shifted: return "random_shifted";
    case Equation::transformed: return "transformed";
    }
    return "?";
}

Equation equation_from(const std::string& s) {
    if (s == "snls") return Equation::snls;
    if (s == "deterministic") return Equation::deterministic;
    if (s == "random_shifted") return Equation::random_shifted;
    if (s == "transformed") return Equation::transformed;
    throw ValidationError("unknown equation '" + s + "'");
}

std::string to_string(BoundaryGuard g) {
    switch (g) {
    case BoundaryGuard::strict: return "strict";
    case BoundaryGuard::warn: return "warn";
    case BoundaryGuard::off: return "off";
    }
    return "?";
}

BoundaryGuard boundary_guard_from(const std::string& s) {
    if (s == "strict") return BoundaryGuard::strict;
    if (s == "warn") return BoundaryGuard::warn;
    if (s == "off") return BoundaryGuard::off;
    throw ValidationError("unknown boundary guard '" + s + "'");
}

std::size_t step_count(const SimConfig& cfg) {
    const double r = cfg.t_end / cfg.dt;
    const double k = std::round(r);
    if (std::abs(r - k) > 1e-9 * std::max(1.0, r))
        throw ValidationError("sim.t_end must be a multiple of sim.dt");
    return static_cast<std::size_t>(k);
}

void validate(const SimConfig& cfg) {
    if (cfg.grid.size() == 0) throw ValidationError("simulation grid is not set");
    if (!(cfg.sigma > 0.0)) throw ValidationError("sim.sigma must be positive");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ValidationError("sim.dt must be positive");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw ValidationError("sim.t_end must be >= 0");
    if (cfg.snapshot_stride < 1) throw ValidationError("sim.snapshot_stride must be >= 1");
    if (cfg.equation == Equation::transformed) {
        if (cfg.t_end >= 1.0) throw ValidationError("sim.t_end must be < 1 for the transformed equation");
        if (cfg.t_end >= 1.0 - 10.0 * cfg.dt)
            throw ValidationError("sim.t_end must be < 1 - 10 dt for the transformed equation");
    }
    if (cfg.noise) validate(*cfg.noise);
    if (cfg.noise_horizon != 0.0 && cfg.noise_horizon < cfg.t_end)
        throw ValidationError("noise.horizon must be >= sim.t_end");
    step_count(cfg);
}

namespace {

double modulus_power(const cplx& u, double sigma) {
    const double a2 = std::norm(u);
    return a2 > 0.0 ? std::pow(a2, sigma) : 0.0;
}

class Splitter {
public:
    Splitter(const GridSpec& grid, double dt, double sigma, bool linear_only)
        : grid_(grid), sigma_(sigma), linear_only_(linear_only), mult_(propagator_multiplier(grid, dt)) {}

    void linear(std::vector<cplx>& v) const {
        fft_forward(grid_, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] *= mult_[i];
        fft_inverse(grid_, v);
    }

    // u <- exp(i c tau |u + s|^{2 sigma}) (u + s) - s
    void nonlinear(std::vector<cplx>& v, double tau, const std::vector<cplx>* shift) const {
        if (linear_only_) return;
        if (!shift) {
            for (auto& z : v) z *= std::polar(1.0, tau * modulus_power(z, sigma_));
            return;
        }
        const auto& s = *shift;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const cplx w = v[i] + s[i];
            v[i] = w * std::polar(1.0, tau * modulus_power(w, sigma_)) - s[i];
        }
    }

private:
    GridSpec grid_;
    double sigma_;
    bool linear_only_;
    std::vector<cplx> mult_;
};

enum class Kind { plain, shifted, transformed };

struct Monitor {
    bool boundary_warned = false;
    bool resolution_warned = false;

    void check(const Field& u, double t, std::vector<std::string>& warnings) {
        if (!boundary_warned) {
            const double b = boundary_mass_fraction(u);
            if (b > 1e-10) {
                std::ostringstream os;
                os << "boundary mass fraction " << b << " exceeds 1e-10 at t=" << t;
                warnings.push_back(os.str());
                boundary_warned = true;
            }
        }
        if (!resolution_warned) {
            const double h = high_frequency_fraction(u);
            if (h > 1e-10) {
                std::ostringstream os;
                os << "spectral energy above N/3 is " << h << " of total at t=" << t;
                warnings.push_back(os.str());
                resolution_warned = true;
            }
        }
    }
};

void initial_guard(const SimConfig& cfg, const Field& u0, std::vector<std::string>& warnings) {
    if (!u0.grid().same_as(cfg.grid)) throw ValidationError("initial field grid differs from the configured grid");
    if (!u0.all_finite()) throw ValidationError("initial field is not finite");
    if (cfg.guard == BoundaryGuard::off) return;
    const double b = boundary_mass_fraction(u0);
    if (b > 1e-10) {
        std::ostringstream os;
        os << "initial boundary mass fraction " << b << " exceeds 1e-10; enlarge grid.box_length";
        if (cfg.guard == BoundaryGuard::strict) throw ValidationError(os.str());
        warnings.push_back(os.str());
    }
}

Trajectory run(const SimConfig& cfg, const Field& u0, Kind kind, std::span<const Field> shift,
               std::shared_ptr<const NoisePath> path) {
    validate(cfg);
    Trajectory tr;
    tr.config = cfg;
    initial_guard(cfg, u0, tr.warnings);

    const std::size_t K = step_count(cfg);
    const double dt = cfg.dt;
    const int n = cfg.grid.dim();
    if (!shift.empty() && shift.size() < K + 1)
        throw ValidationError("frozen shift must cover every partition time");
    for (const auto& z : shift)
        if (!z.grid().same_as(cfg.grid)) throw ValidationError("frozen shift grid differs from the configured grid");

    const bool noisy = kind == Kind::plain && cfg.equation == Equation::snls && cfg.noise.has_value();
    std::optional<ProfileData> prof;
    std::vector<cplx> kick;
    if (noisy) {
        if (!path) {
            const double horizon = cfg.noise_horizon > 0.0 ? cfg.noise_horizon : cfg.t_end;
            path = std::make_shared<const NoisePath>(sample_path(*cfg.noise, horizon, dt));
        }
        if (std::abs(path->dt() - dt) > 1e-12 * dt) throw ValidationError("noise path step differs from sim.dt");
        if (path->steps() < K) throw ValidationError("noise path is shorter than the simulation");
        tr.noise_path = path;
        tr.phi = make_profile(cfg.noise->phi, cfg.grid);
        prof = prepare_profile(*tr.phi);
        kick = propagate(*tr.phi, dt).data();
    }

    Splitter split(cfg.grid, dt, cfg.sigma, cfg.linear_only);
    Monitor monitor;
    std::vector<cplx> u = u0.data();
    std::vector<cplx> s;

    tr.times.reserve(K + 1);
    tr.series.reserve(K + 1);
    auto record = [&](std::size_t k, const Field& f) {
        const double t = static_cast<double>(k) * dt;
        tr.times.push_back(t);
        tr.series.push_back(compute_functionals(f, t, cfg.sigma));
        if (!std::isfinite(tr.series.back().M) || !std::isfinite(tr.series.back().H)) {
            std::ostringstream os;
            os << "non-finite solution at step " << k << " (t=" << t << ")";
            throw NumericalError(os.str());
        }
        if (noisy && cfg.record_integrands && k < K) tr.integrands.push_back(noise_integrands(f, t, cfg.sigma, *prof));
        if (k % static_cast<std::size_t>(cfg.snapshot_stride) == 0 || k == K) {
            tr.snapshots.push_back({t, f});
            monitor.check(f, t, tr.warnings);
        }
    };

    record(0, u0);
    for (std::size_t k = 0; k < K; ++k) {
        const double tk = static_cast<double>(k) * dt;
        double c1 = 1.0, c2 = 1.0;
        if (kind == Kind::transformed) {
            const double e = cfg.sigma * n - 2.0;
            c1 = std::pow(1.0 - (tk + 0.25 * dt), e);
            c2 = std::pow(1.0 - (tk + 0.75 * dt), e);
        }
        const bool shifted = !shift.empty();
        if (shifted) s = shift[k].data();
        split.nonlinear(u, 0.5 * dt * c1, shifted ? &s : nullptr);
        split.linear(u);
        if (shifted) split.linear(s);
        split.nonlinear(u, 0.5 * dt * c2, shifted ? &s : nullptr);
        if (noisy) {
            const double w = path->g(k) * path->increments()[k];
            if (w != 0.0)
                for (std::size_t i = 0; i < u.size(); ++i) u[i] += cplx(0.0, w) * kick[i];
        }
        record(k + 1, Field(cfg.grid, std::vector<cplx>(u)));
    }
    return tr;
}

} // namespace

Field step_deterministic(const Field& u, double dt, double sigma) {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
    Splitter split(u.grid(), dt, sigma, false);
    std::vector<cplx> v = u.data();
    split.nonlinear(v, 0.5 * dt, nullptr);
    split.linear(v);
    split.nonlinear(v, 0.5 * dt, nullptr);
    Field out(u.grid(), std::move(v));
    return out;
}

Field step_snls(const Field& u, double dt, double sigma, const Field& phi, double g, double dB) {
    Field out = step_deterministic(u, dt, sigma);
    const double w = g * dB;
    if (w == 0.0) return out;
    const Field k = propagate(phi, dt);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += cplx(0.0, w) * k[i];
    return out;
}

Trajectory evolve(const SimConfig& cfg, const Field& u0, std::shared_ptr<const NoisePath> path) {
    switch (cfg.equation) {
    case Equation::random_shifted: return evolve_random(cfg, u0, {});
    case Equation::transformed: return evolve_transformed(cfg, u0, {});
    default: return run(cfg, u0, Kind::plain, {}, std::move(path));
    }
}

Trajectory evolve_random(const SimConfig& cfg, const Field& u0, std::span<const Field> shift) {
    return run(cfg, u0, Kind::shifted, shift, nullptr);
}

Trajectory evolve_transformed(const SimConfig& cfg, const Field& u0, std::span<const Field> shift) {
    SimConfig c = cfg;
    c.equation = Equation::transformed;
    return run(c, u0, Kind::transformed, shift, nullptr);
}

} // namespace snls
