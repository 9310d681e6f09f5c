#include "snls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "snls/errors.hpp"
#include "snls/operators.hpp"

namespace snls {

// ---- Ito budgets

namespace {

struct PathTerms {
    const NoisePath* path = nullptr;
    const std::vector<NoiseIntegrands>* integrands = nullptr;
};

PathTerms noise_terms(const Trajectory& tr) {
    PathTerms pt;
    if (!tr.config.noise || tr.config.equation != Equation::snls) return pt;
    if (!tr.noise_path) throw ValidationError("trajectory has noise but no noise path");
    const std::size_t K = tr.series.size() - 1;
    if (tr.integrands.size() != K) throw ValidationError("trajectory does not carry the Ito integrands");
    pt.path = tr.noise_path.get();
    pt.integrands = &tr.integrands;
    return pt;
}

void finish(ItoBudget& b) {
    b.residual = b.increment - b.drift - b.correction - b.martingale;
    b.residual_qv = b.increment - b.drift - b.correction_qv - b.martingale;
}

} // namespace

ItoBudget ito_mass_budget(const Trajectory& tr) {
    if (tr.series.empty()) throw ValidationError("empty trajectory");
    ItoBudget b;
    b.functional = "mass";
    b.steps = tr.series.size() - 1;
    b.increment = tr.series.back().M - tr.series.front().M;
    const auto pt = noise_terms(tr);
    if (pt.path) {
        const double phi2 = [&] {
            double s = 0.0;
            for (const auto& v : tr.phi->values()) s += std::norm(v);
            return s * tr.phi->grid().cell_volume();
        }();
        for (std::size_t k = 0; k < b.steps; ++k) {
            const double g = pt.path->g(k);
            const double dB = pt.path->increments()[k];
            b.martingale += (*pt.integrands)[k].mass_dB * g * dB;
            b.correction += phi2 * g * g * pt.path->dt();
            b.correction_qv += phi2 * g * g * dB * dB;
        }
    }
    finish(b);
    return b;
}

ItoBudget ito_energy_budget(const Trajectory& tr) {
    if (tr.series.empty()) throw ValidationError("empty trajectory");
    ItoBudget b;
    b.functional = "pseudo_conformal_energy";
    b.steps = tr.series.size() - 1;
    b.increment = tr.series.back().E - tr.series.front().E;
    const double sigma = tr.config.sigma;
    const int n = tr.config.grid.dim();
    const double coeff = 4.0 * (2.0 - n * sigma) / (sigma + 1.0);
    for (std::size_t k = 0; k < b.steps; ++k) {
        const auto& a = tr.series[k];
        const auto& c = tr.series[k + 1];
        const double dt = c.t - a.t;
        b.drift += 0.5 * dt * ((1.0 + a.t) * a.potential + (1.0 + c.t) * c.potential);
    }
    b.drift *= coeff;
    if (tr.config.linear_only) b.drift = 0.0;
    const auto pt = noise_terms(tr);
    if (pt.path) {
        for (std::size_t k = 0; k < b.steps; ++k) {
            const double g = pt.path->g(k);
            const double dB = pt.path->increments()[k];
            const auto& in = (*pt.integrands)[k];
            b.martingale += in.energy_dB * g * dB;
            b.correction += in.energy_dt * g * g * pt.path->dt();
            b.correction_qv += in.energy_dt * g * g * dB * dB;
        }
    }
    finish(b);
    return b;
}

// ---- regimes

std::string to_string(RegimeClass c) {
    switch (c) {
    case RegimeClass::long_range: return "long_range";
    case RegimeClass::short_range_L2: return "short_range_L2";
    case RegimeClass::sigma_scattering: return "sigma_scattering";
    case RegimeClass::h1_scattering: return "h1_scattering";
    case RegimeClass::energy_critical_excluded: return "energy_critical_excluded";
    }
    return "?";
}

std::string to_string(MassCriticality c) {
    switch (c) {
    case MassCriticality::sub: return "sub";
    case MassCriticality::critical: return "critical";
    case MassCriticality::super: return "super";
    }
    return "?";
}

const HypothesisWindow* RegimeReport::window(const std::string& id) const {
    for (const auto& w : windows)
        if (w.id == id) return &w;
    return nullptr;
}

double strauss_exponent(int n) {
    if (n < 1) throw ValidationError("dimension must be >= 1");
    const double d = n;
    return (2.0 - d + std::sqrt(d * d + 12.0 * d + 4.0)) / (2.0 * d);
}

namespace {

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

} // namespace

RegimeReport classify_regime(int n, double sigma, double alpha) {
    if (n < 1) throw ValidationError("dimension must be >= 1");
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
    RegimeReport r;
    r.n = n;
    r.sigma = sigma;
    r.alpha = alpha;
    const double s2 = 2.0 * sigma;
    r.two_sigma = s2;
    r.strauss = strauss_exponent(n);
    r.long_range_bound = 2.0 / n;
    r.mass_critical = 4.0 / n;
    r.energy_critical = n >= 3 ? 4.0 / (n - 2) : kInf;

    const bool critical = same(s2, r.mass_critical);
    r.mass_criticality = critical ? MassCriticality::critical
                                  : (s2 < r.mass_critical ? MassCriticality::sub : MassCriticality::super);
    const bool subcritical_energy = s2 < r.energy_critical && !(n >= 3 && same(s2, r.energy_critical));
    const std::string upper = n >= 3 ? "4/(n-2)" : "inf";

    HypothesisWindow gwp{"global_wellposedness", "0 < 2sigma < " + upper, "g bounded on bounded intervals"};
    gwp.applies = subcritical_energy;
    gwp.required_alpha = 0.0;

    HypothesisWindow l2{"l2_scattering", "2/n < 2sigma < 4/n", "|g(t)| = o(t^{-5/2})"};
    l2.applies = s2 > r.long_range_bound && !same(s2, r.long_range_bound) && s2 < r.mass_critical && !critical;
    l2.required_alpha = 2.5;

    HypothesisWindow sig{"sigma_scattering",
                      n >= 3 ? "sigma(n) < 2sigma < 4/(n-2)" : "sigma(n) < 2sigma < inf, 2sigma != 4/n",
                      "|g(t)| = o(t^{-5/2})"};
    sig.applies = s2 > r.strauss && !same(s2, r.strauss) && subcritical_energy;
    if (sig.applies && n <= 2 && critical) sig.small_data = true;
    sig.required_alpha = 2.5;

    HypothesisWindow h1{"h1_scattering", "4/n <= 2sigma < " + upper, "|g(t)| = o(t^{-1})"};
    h1.applies = (s2 >= r.mass_critical || critical) && subcritical_energy;
    h1.required_alpha = 1.0;

    r.windows = {gwp, l2, sig, h1};
    for (auto& w : r.windows) {
        // power-law g = <t>^{-alpha} is o(t^{-a}) exactly when alpha > a
        w.noise_ok = alpha > w.required_alpha;
        if (w.applies && !w.noise_ok && w.required_alpha > 0.0) {
            std::ostringstream os;
            os << w.id << ": noise hypothesis " << w.decay << " unmet for alpha=" << alpha;
            r.warnings.push_back(os.str());
        }
        if (w.applies && w.small_data) {
            r.small_data_flag = true;
            r.warnings.push_back(w.id + ": mass-critical case needs the additional small-data assumption");
        }
    }

    if (!subcritical_energy)
        r.regime = RegimeClass::energy_critical_excluded;
    else if (s2 <= r.long_range_bound || same(s2, r.long_range_bound))
        r.regime = RegimeClass::long_range;
    else if (r.window("sigma_scattering")->applies)
        r.regime = RegimeClass::sigma_scattering;
    else if (r.window("h1_scattering")->applies)
        r.regime = RegimeClass::h1_scattering;
    else
        r.regime = RegimeClass::short_range_L2;

    switch (r.regime) {
    case RegimeClass::short_range_L2:
    case RegimeClass::sigma_scattering: r.required_alpha = 2.5; break;
    case RegimeClass::h1_scattering: r.required_alpha = 1.0; break;
    default: r.required_alpha = kInf; break;
    }
    if (r.regime == RegimeClass::long_range) r.warnings.push_back("long-range nonlinearity: no scattering expected");
    if (r.regime == RegimeClass::energy_critical_excluded)
        r.warnings.push_back("2sigma at or above the energy-critical exponent: outside the covered range");
    return r;
}

bool is_admissible(double p, double q, int n) {
    if (!(p >= 2.0) || !(q >= 2.0) || n < 1) return false;
    if (std::isinf(p) && q == 2.0 && n == 2) return false;
    const double lhs = std::isinf(q) ? 0.0 : 2.0 / q;
    const double rhs = n * (0.5 - (std::isinf(p) ? 0.0 : 1.0 / p));
    return std::abs(lhs - rhs) <= 1e-12;
}

// ---- scattering

std::string to_string(NormKind k) {
    switch (k) {
    case NormKind::L2: return "L2";
    case NormKind::H1: return "H1";
    case NormKind::Sigma: return "Sigma";
    }
    return "?";
}

NormKind norm_kind_from(const std::string& s) {
    if (s == "L2" || s == "l2") return NormKind::L2;
    if (s == "H1" || s == "h1") return NormKind::H1;
    if (s == "Sigma" || s == "sigma") return NormKind::Sigma;
    throw ValidationError("unknown norm kind '" + s + "'");
}

double norm_of(const Field& f, NormKind kind) {
    switch (kind) {
    case NormKind::L2: return lp_norm(f, 2.0);
    case NormKind::H1: return sobolev_norm(f, 2.0);
    case NormKind::Sigma: return sigma_norm(f);
    }
    return 0.0;
}

namespace {

const Field& snapshot_at(const Trajectory& tr, double t) {
    const double tol = 0.5 * tr.config.dt;
    for (const auto& s : tr.snapshots)
        if (std::abs(s.t - t) <= tol) return s.field;
    std::ostringstream os;
    os << "no snapshot at checkpoint t=" << t << " (adjust sim.snapshot_stride)";
    throw ValidationError(os.str());
}

} // namespace

CauchyResult scattering_cauchy(const Trajectory& tr, NormKind kind, std::span<const double> checkpoints) {
    if (checkpoints.size() < 3) throw ValidationError("scattering test needs at least 3 checkpoints");
    for (std::size_t k = 1; k < checkpoints.size(); ++k)
        if (!(checkpoints[k] > checkpoints[k - 1])) throw ValidationError("checkpoints must increase");
    CauchyResult r;
    r.norm = kind;
    r.times.assign(checkpoints.begin(), checkpoints.end());
    std::vector<Field> w;
    for (double t : checkpoints) w.push_back(propagate(snapshot_at(tr, t), -t));
    const std::size_t K = w.size();
    r.differences.assign(K, std::vector<double>(K, 0.0));
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j) {
            const double d = norm_of(w[j] - w[i], kind);
            r.differences[i][j] = r.differences[j][i] = d;
        }
    for (std::size_t k = 0; k + 1 < K; ++k) r.successive.push_back(r.differences[k][k + 1]);
    r.contracting = true;
    r.monotone = true;
    for (std::size_t k = 0; k + 1 < r.successive.size(); ++k) {
        const double ratio = r.successive[k] > 0.0 ? r.successive[k + 1] / r.successive[k] : 0.0;
        r.ratios.push_back(ratio);
        if (!(ratio < 0.8)) r.contracting = false;
        if (r.successive[k + 1] > r.successive[k]) r.monotone = false;
    }
    const double mn = *std::min_element(r.successive.begin(), r.successive.end());
    r.above_floor = mn >= 0.5 * r.successive.front() && r.successive.front() > 0.0;
    r.limit = w.back();
    return r;
}

// ---- Strichartz

std::vector<PairSpec> default_pairs(int n) {
    std::vector<PairSpec> out;
    out.push_back({2.0, kInf, false, "(2,inf)"});
    const double d = 2.0 + 4.0 / n;
    out.push_back({d, d, false, "(2+4/n,2+4/n)"});
    if (n >= 3) out.push_back({2.0 * n / (n - 2.0), 2.0, false, "(2n/(n-2),2)"});
    const double mp = n == 1 ? kInf : 2.0 * (n + 1) / (n - 1.0);
    out.push_back({mp, static_cast<double>(n + 1), true, "morawetz"});
    return out;
}

bool plateau_detected(std::span<const double> horizons, std::span<const double> cumulative, double* increase) {
    if (horizons.size() < 2 || horizons.size() != cumulative.size()) return false;
    const double T = horizons.back();
    std::size_t half = 0;
    for (std::size_t k = 0; k < horizons.size(); ++k)
        if (std::abs(horizons[k] - 0.5 * T) < std::abs(horizons[half] - 0.5 * T)) half = k;
    const double a = cumulative[half];
    const double b = cumulative.back();
    const double inc = a > 0.0 ? (b - a) / a : (b > 0.0 ? kInf : 0.0);
    if (increase) *increase = inc;
    return inc < 0.02;
}

StrichartzReport strichartz_monitor(const Trajectory& tr, std::span<const PairSpec> pairs) {
    const int n = tr.config.grid.dim();
    StrichartzReport rep;
    if (tr.snapshots.size() < 2) throw ValidationError("Strichartz monitor needs at least two snapshots");
    for (const auto& pr : pairs) {
        if (!pr.morawetz && !is_admissible(pr.p, pr.q, n)) {
            std::ostringstream os;
            os << "pair (p=" << pr.p << ", q=" << pr.q << ") is not admissible in dimension " << n;
            throw ValidationError(os.str());
        }
        PairMonitor m;
        m.pair = pr;
        std::vector<double> t, v;
        for (const auto& s : tr.snapshots) {
            t.push_back(s.t);
            v.push_back(pr.morawetz ? lp_norm(s.field, pr.p) : sobolev_norm(s.field, pr.p));
        }
        for (std::size_t k = 1; k < t.size(); ++k) {
            m.horizons.push_back(t[k]);
            m.cumulative.push_back(mixed_norm_values(std::span(t).first(k), std::span(v).first(k), pr.q, t[k]));
        }
        m.plateau = plateau_detected(m.horizons, m.cumulative, &m.last_window_increase);
        if (!pr.morawetz) rep.s1_lower_bound = std::max(rep.s1_lower_bound, m.cumulative.back());
        rep.pairs.push_back(std::move(m));
    }
    return rep;
}

GrowthFit growth_fit(std::span<const double> taus, std::span<const double> values) {
    if (taus.size() < 2 || taus.size() != values.size()) throw ValidationError("growth fit needs >= 2 grid points");
    for (std::size_t k = 1; k < taus.size(); ++k)
        if (!(taus[k] > taus[k - 1])) throw ValidationError("growth fit grid must increase");
    if (!(taus.front() > 0.0)) throw ValidationError("growth fit grid must be positive");
    GrowthFit f;
    f.taus.assign(taus.begin(), taus.end());
    f.values.assign(values.begin(), values.end());
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        if (!(values[k] > 0.0)) throw ValidationError("growth fit values must be positive");
        lx.push_back(std::log1p(taus[k]));
        ly.push_back(std::log(values[k]));
    }
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    if (sxx == 0.0) throw ValidationError("degenerate growth fit grid");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

} // namespace snls
