// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "snls/analysis.hpp"
#include "snls/config.hpp"
#include "snls/ensemble.hpp"
#include "snls/experiments.hpp"
#include "snls/fft.hpp"
#include "snls/operators.hpp"

using namespace snls;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string out_root = "acceptance_out";

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_l2(const Field& a, const Field& b) { return lp_norm(a - b, 2.0) / lp_norm(b, 2.0); }

Field gaussian(const GridSpec& g, double width) {
    return Field::sample(g, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return cplx(std::exp(-0.5 * r2 / (width * width)), 0.0);
    });
}

Field random_field(const GridSpec& g, std::uint64_t seed) {
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = cplx(standard_normal(seed, 2 * i), standard_normal(seed, 2 * i + 1));
    return f;
}

// Least-squares slope of log|y| against log2(1/x): the halving factor is 2^slope.
double halving_factor(const std::vector<double>& dts, const std::vector<double>& ys) {
    const std::size_t n = dts.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += -std::log2(dts[i]);
        my += std::log2(std::abs(ys[i]));
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = -std::log2(dts[i]) - mx;
        sxy += dx * (std::log2(std::abs(ys[i])) - my);
        sxx += dx * dx;
    }
    return std::pow(2.0, -sxy / sxx);
}

ExperimentConfig config(const std::string& text, const std::string& out) {
    ExperimentConfig c = parse_config(text, out);
    c.output_dir = (fs::path(out_root) / out).string();
    finalize(c);
    return c;
}

// ---- 1
Verdict propagator_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const GridSpec g = make_grid(1, 1024, 60.0);
    const Field u = propagate(gaussian(g, 1.0), 1.0);
    const double elapsed = seconds_since(t0);
    // e^{-it Lap} on e^{-x^2/2}: (1 - 2it)^{-1/2} e^{-x^2 / (2 (1 - 2it))}
    const cplx a(1.0, -2.0);
    const Field exact = Field::sample(g, [&](std::span<const double> x) {
        return std::exp(-x[0] * x[0] / (2.0 * a)) / std::sqrt(a);
    });
    const double err = rel_l2(u, exact);
    return {err < 1e-8 && elapsed < 1.0, fmt("relative L2 error %.3e (< 1e-8), %.4f s (< 1 s)", err, elapsed)};
}

// ---- 2
Verdict unitarity_group_law() {
    double unit = 0.0, group = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const GridSpec g = make_grid(n, n == 1 ? 256 : (n == 2 ? 64 : 16), 20.0);
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Field u = random_field(g, seed * 101 + n);
            const double t = 0.1 * seed, s = -0.17 * seed;
            unit = std::max(unit, std::abs(lp_norm(propagate(u, t), 2.0) / lp_norm(u, 2.0) - 1.0));
            group = std::max(group, rel_l2(propagate(propagate(u, t), s), propagate(u, t + s)));
        }
    }
    return {unit < 1e-12 && group < 1e-12, fmt("max |norm ratio - 1| %.3e, max group-law deviation %.3e (< 1e-12)",
                                                 unit, group)};
}

// ---- 3
Verdict operator_identities() {
    const GridSpec g = make_grid(1, 1024, 40.0);
    const Field u = gaussian(g, 1.0);
    const double t = 0.3, beta = 1.7, theta = 1.0, c = 1.0 + theta * t;
    // (i) S(-t) D_beta = D_beta S(-beta^2 t)
    const double r1 = rel_l2(propagate(dilate(u, beta), -t), dilate(propagate(u, -beta * beta * t), beta));
    // (ii) S(-t) M_theta = M_{theta/c} D_{1/c} S(-t/c)
    const Field lhs = propagate(modulate(u, theta), -t);
    const Field rhs = modulate(dilate(propagate(u, -t / c), 1.0 / c), theta / c);
    const double r2 = rel_l2(regrid(rhs, lhs.grid()), lhs);
    // (I) J(t) = S(t) x S(-t)
    const double tj = 0.5;
    const double r3 = rel_l2(apply_J(u, tj)[0], propagate(coordinate_multiply(propagate(u, -tj), 0), tj));
    // (II) J(t) = M_{-1/t} (-2it grad) M_{1/t}
    Field d = derivative(modulate(u, 1.0 / tj), 0);
    d *= cplx(0.0, -2.0 * tj);
    const double r4 = rel_l2(apply_J(u, tj)[0], modulate(d, -1.0 / tj));
    const double worst = std::max({r1, r2, r3, r4});
    return {worst < 1e-6, fmt("dilation %.2e, modulation %.2e, J conjugation %.2e, J gauge %.2e (< 1e-6)", r1, r2, r3, r4)};
}

SimConfig deterministic(int points, double box, double sigma, double dt, double t_end) {
    SimConfig c;
    c.grid = make_grid(1, points, box);
    c.sigma = sigma;
    c.dt = dt;
    c.t_end = t_end;
    c.snapshot_stride = 1 << 30;
    c.equation = Equation::deterministic;
    c.guard = BoundaryGuard::warn;
    return c;
}

double max_rel_dev(const std::vector<FunctionalRecord>& s, double FunctionalRecord::*m) {
    double dev = 0.0;
    for (const auto& r : s) dev = std::max(dev, std::abs(r.*m / s.front().*m - 1.0));
    return dev;
}

// ---- 4
Verdict deterministic_nls() {
    const SimConfig c = deterministic(2048, 320.0, 1.0, 1e-3, 5.0);
    const Trajectory tr = evolve(c, gaussian(c.grid, 2.0));
    const double dm = max_rel_dev(tr.series, &FunctionalRecord::M);
    const double dh = max_rel_dev(tr.series, &FunctionalRecord::H);

    // u = A e^{i(kx + (k^2 + A^{2 sigma}) t)} on the 2 pi torus
    const SimConfig pw = deterministic(32, 2.0 * std::numbers::pi, 1.0, 1e-3, 5.0);
    const double A = 0.5;
    const Field p0 = Field::sample(pw.grid, [&](std::span<const double> x) { return A * std::polar(1.0, x[0]); });
    const Field pT = evolve(pw, p0).final_field();
    const Field exact = std::polar(1.0, (1.0 + A * A) * 5.0) * p0;
    const double epw = rel_l2(pT, exact);

    // order from dt = 0.02 .. 0.0025 against a dt = 1e-4 reference
    SimConfig oc = deterministic(512, 80.0, 1.0, 1e-4, 1.0);
    const Field g0 = gaussian(oc.grid, 1.0);
    const Field ref = evolve(oc, g0).final_field();
    std::vector<double> dts{0.02, 0.01, 0.005, 0.0025}, errs;
    for (double dt : dts) {
        oc.dt = dt;
        errs.push_back(rel_l2(evolve(oc, g0).final_field(), ref));
    }
    const double order = std::log2(halving_factor(dts, errs));
    const bool ok = dm < 1e-8 && dh < 1e-7 && epw < 1e-6 && std::abs(order - 2.0) <= 0.2;
    return {ok, fmt("mass drift %.2e (< 1e-8), Hamiltonian drift %.2e (< 1e-7), plane wave %.2e (< 1e-6), "
                    "Strang order %.3f (2 +- 0.2)",
                    dm, dh, epw, order)};
}

// Composite Simpson on an even number of uniform intervals.
double simpson(const std::vector<double>& t, const std::vector<double>& f) {
    const std::size_t n = t.size() - 1;
    if (n % 2 != 0) throw std::runtime_error("simpson needs an even interval count");
    const double h = (t.back() - t.front()) / n;
    double s = f.front() + f.back();
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
    return s * h / 3.0;
}

// ---- 5
Verdict pseudo_conformal_law() {
    const SimConfig crit = deterministic(2048, 320.0, 2.0, 1e-3, 2.0);
    const Trajectory a = evolve(crit, gaussian(crit.grid, 2.0));
    const double dev = max_rel_dev(a.series, &FunctionalRecord::E);

    const SimConfig cub = deterministic(2048, 320.0, 1.0, 1e-3, 2.0);
    const Trajectory b = evolve(cub, gaussian(cub.grid, 2.0));
    std::vector<double> ts, fs;
    for (const auto& r : b.series) {
        ts.push_back(r.t);
        fs.push_back((1.0 + r.t) * r.potential);
    }
    const double sigma = 1.0, n = 1.0;
    const double predicted = 4.0 * (2.0 - n * sigma) / (sigma + 1.0) * simpson(ts, fs);
    const double measured = b.series.back().E - b.series.front().E;
    const double rel = std::abs(measured - predicted) / std::abs(predicted);
    return {dev < 1e-4 && rel < 0.01,
            fmt("2sigma=4: max |E/E(0) - 1| %.2e (< 1e-4); sigma=1: dE %.6f vs quadrature %.6f, rel %.2e (< 1e-2)",
                dev, measured, predicted, rel)};
}

struct HalvingRun {
    std::vector<double> dts, literal, qv;
};

// One fixed seed, the fine path coarsened so every level sees the same Brownian motion.
HalvingRun halving(const std::string& text, bool energy, int levels, double dt0) {
    const ExperimentConfig cfg = parse_config(text, "halving");
    SimConfig c = cfg.sim;
    c.snapshot_stride = 1 << 30;
    NoiseSpec ns = *c.noise;
    ns.seed = path_seed(cfg.ensemble.base_seed, 0);
    c.noise = ns;
    const int F = 1 << (levels - 1);
    const NoisePath fine = sample_path(ns, c.t_end, dt0 / F);
    const Field u0 = make_initial(cfg);
    HalvingRun h;
    for (int f = F; f >= 1; f /= 2) {
        c.dt = dt0 / F * f;
        const Trajectory tr = evolve(c, u0, std::make_shared<const NoisePath>(fine.coarsen(f)));
        const ItoBudget b = energy ? ito_energy_budget(tr) : ito_mass_budget(tr);
        h.dts.push_back(c.dt);
        h.literal.push_back(b.residual);
        h.qv.push_back(b.residual_qv);
    }
    std::reverse(h.dts.begin(), h.dts.end());
    std::reverse(h.literal.begin(), h.literal.end());
    std::reverse(h.qv.begin(), h.qv.end());
    return h;
}

std::string residual_list(const HalvingRun& h) {
    std::string s;
    for (std::size_t i = 0; i < h.dts.size(); ++i)
        s += fmt("%sdt=%g qv=%.2e lit=%.2e", i ? ", " : "", h.dts[i], h.qv[i], h.literal[i]);
    return s;
}

const char* kNoiseBase = R"(
grid.dim = 1
grid.points = 256
grid.box_length = 64
sim.sigma = 1
sim.t_end = 1
sim.equation = snls
sim.boundary_guard = warn
initial.kind = gaussian
initial.width = 1
noise.phi.kind = gaussian
noise.phi.width = 1
noise.phi.normalize = true
noise.g.kind = indicator
noise.g.t0 = 0
noise.g.t1 = 1
ensemble.base_seed = 20240601
)";

std::vector<std::string> diagnostics;

// ---- 6
Verdict ito_mass() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = config(std::string(kNoiseBase) + "experiment = ensemble\nsim.dt = 0.001\n"
                                                            "sim.snapshot_stride = 1000\nensemble.size = 1000\n",
                                  "ito_mass");
    cfg.sim.record_integrands = true;
    const Field u0 = make_initial(cfg);
    const auto r = run_ensemble(cfg, u0, [](const Trajectory& tr) {
        const auto& s = tr.series;
        return std::vector<double>{s.back().M - s.front().M};
    });
    const double elapsed = seconds_since(t0);
    double mean = 0.0, var = 0.0;
    for (const auto& s : r.scalars) mean += s[0];
    mean /= r.paths;
    for (const auto& s : r.scalars) var += (s[0] - mean) * (s[0] - mean);
    const double se = std::sqrt(var / (r.paths - 1) / r.paths);
    const double z = (mean - 1.0) / se;

    const HalvingRun h = halving(std::string(kNoiseBase) + "sim.dt = 0.01\n", false, 5, 0.01);
    const double fq = halving_factor(h.dts, h.qv), fl = halving_factor(h.dts, h.literal);
    diagnostics.push_back("mass residuals: " + residual_list(h));
    const bool ok = std::abs(z) <= 3.0 && fq >= 1.5 && fq <= 3.0 && elapsed < 300.0;
    return {ok, fmt("E[M(1)-M(0)] = %.4f +- %.4f (z = %.2f, |z| <= 3), %zu paths in %.1f s (< 300 s); halving "
                    "factor %.3f in [1.5, 3] (realized-QV budget; dt-budget diagnostic %.3f)",
                    mean, se, z, r.paths, elapsed, fq, fl)};
}

// ---- 7
Verdict ito_energy() {
    const HalvingRun h =
        halving(std::string(kNoiseBase) + "sim.dt = 0.01\nnoise.phi.amplitude = 0.1\n", true, 5, 0.01);
    const double fq = halving_factor(h.dts, h.qv), fl = halving_factor(h.dts, h.literal);
    diagnostics.push_back("energy residuals: " + residual_list(h));
    return {fq >= 1.5 && fq <= 3.0,
            fmt("halving factor %.3f in [1.5, 3], order %.2f (realized-QV budget; dt-budget diagnostic %.3f)", fq,
                std::log2(fq), fl)};
}

// ---- 8
Verdict tail_decay() {
    const ExperimentConfig cfg = config(R"(
experiment = tail-decay
grid.dim = 1
grid.points = 256
grid.box_length = 64
sim.sigma = 1
sim.dt = 0.01
sim.t_end = 64
sim.equation = snls
noise.phi.kind = gaussian
noise.phi.width = 1
noise.phi.normalize = true
noise.g.kind = power_law
noise.g.alpha = 3
tail.p = 2
tail.paths = 100
ensemble.base_seed = 20240601
)",
                                        "tail_decay");
    const Outcome o = run_experiment(cfg);
    const double m = o.result["median_slope"].get<double>();
    return {m >= -2.8 && m <= -2.2 && cfg.tail.paths >= 100,
            fmt("median slope %.4f in [-2.8, -2.2] (theory -2.5), %d paths", m, cfg.tail.paths)};
}

const char* kGrowth = R"(
experiment = growth-fit
grid.dim = 1
grid.points = 1024
grid.box_length = 256
sim.dt = 0.01
sim.t_end = 8
sim.equation = snls
sim.snapshot_stride = 100
sim.boundary_guard = warn
initial.kind = gaussian
initial.width = 1
noise.phi.kind = gaussian
noise.phi.width = 1
noise.phi.normalize = true
noise.g.kind = power_law
noise.g.alpha = 3
ensemble.size = 200
ensemble.base_seed = 20240601
growth.taus = 0.5, 1, 2, 4, 8
)";

// ---- 9
Verdict growth() {
    const Outcome a = run_experiment(config(std::string(kGrowth) + "sim.sigma = 0.75\n", "growth_inter"));
    const Outcome b = run_experiment(config(std::string(kGrowth) + "sim.sigma = 2\n", "growth_critical"));
    const double sa = a.result["slope"].get<double>(), sb = b.result["slope"].get<double>();
    return {sa <= 1.5 && sb <= 0.2,
            fmt("2sigma=1.5: exponent %.4f (<= 1.5); 2sigma=4: exponent %.4f (<= 0.2); 200 paths each", sa, sb)};
}

const char* kScatter = R"(
experiment = scatter-test
grid.dim = 1
sim.dt = 0.005
sim.equation = snls
sim.snapshot_stride = 200
sim.boundary_guard = warn
initial.kind = gaussian
initial.width = 2
noise.phi.kind = gaussian
noise.phi.width = 1
noise.phi.normalize = true
noise.g.kind = power_law
noise.g.alpha = 3
noise.seed = 20240601
scatter.norm = sigma
)";

std::string ratio_list(const Json& r) {
    std::string s;
    for (const auto& v : r["ratios"]) s += fmt("%s%.3f", s.empty() ? "" : ", ", v.get<double>());
    return s;
}

// ---- 10
Verdict scattering() {
    const Outcome pos = run_experiment(
        config(std::string(kScatter) + "sim.sigma = 1.5\nscatter.target = sigma_scattering\ngrid.points = 2048\n"
                                          "grid.box_length = 500\nsim.t_end = 40\nscatter.checkpoints = 5, 10, 20, 40\n", "scatter_pos"));
    const Outcome neg =
        run_experiment(config(std::string(kScatter) + "sim.sigma = 0.25\nscatter.target = none\ngrid.points = 4096\n"
                                     "grid.box_length = 1000\nsim.t_end = 80\nscatter.checkpoints = 10, 20, 40, 80\n",
                                     "scatter_neg"));
    const bool pc = pos.result["contracting"].get<bool>();
    const bool nc = neg.result["contracting"].get<bool>();
    const bool nf = neg.result["above_floor"].get<bool>();
    return {pc && !nc && nf, fmt("2sigma=3, t=5..40: ratios [%s] (< 0.8); 2sigma=0.5, t=10..80: ratios [%s] %s, %s floor",
                                 ratio_list(pos.result).c_str(), ratio_list(neg.result).c_str(),
                                 nc ? "contracting" : "not contracting", nf ? "above" : "below")};
}

// ---- 11
Verdict classifier() {
    std::vector<std::string> bad;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) bad.push_back(what);
    };
    const double s1 = (1.0 + std::sqrt(17.0)) / 2.0, s2 = std::sqrt(2.0), s3 = 1.0;
    expect(std::abs(strauss_exponent(1) - s1) < 1e-14, "sigma(1)");
    expect(std::abs(strauss_exponent(2) - s2) < 1e-14, "sigma(2)");
    expect(std::abs(strauss_exponent(3) - s3) < 1e-14, "sigma(3)");
    const double eps = 1e-9;
    for (int n = 1; n <= 3; ++n) {
        const double lr = 2.0 / n, mc = 4.0 / n, ec = n >= 3 ? 4.0 / (n - 2) : 1e9, st = strauss_exponent(n);
        auto applies = [&](double two_sigma, const char* id) {
            return classify_regime(n, two_sigma / 2.0, 3.0).window(id)->applies;
        };
        const std::string tag = "n=" + std::to_string(n) + " ";
        expect(!applies(lr, "l2_scattering") && applies(lr + eps, "l2_scattering") &&
                   applies(mc - eps, "l2_scattering") && !applies(mc, "l2_scattering"),
               tag + "L2 window");
        expect(!applies(st, "sigma_scattering") && applies(st + eps, "sigma_scattering"), tag + "Sigma lower edge");
        if (n >= 3) expect(applies(ec - eps, "sigma_scattering") && !applies(ec, "sigma_scattering"), tag + "Sigma upper edge");
        else expect(applies(50.0, "sigma_scattering"), tag + "Sigma unbounded");
        expect(!applies(mc - eps, "h1_scattering") && applies(mc, "h1_scattering"), tag + "H1 lower edge");
        if (n >= 3) expect(applies(ec - eps, "h1_scattering") && !applies(ec, "h1_scattering"), tag + "H1 upper edge");
        expect(applies(0.1, "global_wellposedness"), tag + "GWP");
        const auto crit = classify_regime(n, mc / 2.0, 3.0);
        expect(crit.small_data_flag == (n <= 2), tag + "small-data flag");
        expect(classify_regime(n, lr / 2.0, 3.0).regime == RegimeClass::long_range, tag + "long range");
        if (n >= 3) expect(classify_regime(n, ec / 2.0, 3.0).regime == RegimeClass::energy_critical_excluded, tag + "energy critical");
        expect(classify_regime(n, (st + 1e-3) / 2.0, 2.0).window("sigma_scattering")->noise_ok == false &&
                   classify_regime(n, (st + 1e-3) / 2.0, 2.6).window("sigma_scattering")->noise_ok,
               tag + "alpha > 5/2");
    }
    expect(!is_admissible(kInf, 2.0, 2), "forbidden pair (inf, 2, 2)");
    expect(is_admissible(kInf, 2.0, 3) == false && is_admissible(6.0, 2.0, 3), "n=3 endpoint (6, 2)");
    expect(is_admissible(2.0, kInf, 1) && is_admissible(6.0, 6.0, 1) && is_admissible(kInf, 4.0, 1), "n=1 pairs");
    std::string d = bad.empty() ? "all windows, Strauss exponents, forbidden pair and small-data flag reproduced" : "mismatch:";
    for (const auto& b : bad) d += " [" + b + "]";
    return {bad.empty(), d};
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// ---- 12
Verdict determinism() {
    const std::string text = std::string(kNoiseBase) +
                             "experiment = ensemble\nsim.dt = 0.005\nsim.snapshot_stride = 20\n"
                             "ensemble.size = 16\nensemble.write_paths = true\n";
    std::vector<fs::path> dirs;
    for (int w : {1, 8, 1}) {
        ExperimentConfig c = config(text, "determinism_w" + std::to_string(w) + "_" + std::to_string(dirs.size()));
        c.ensemble.workers = w;
        fs::remove_all(c.output_dir);
        run_experiment(c);
        dirs.emplace_back(c.output_dir);
    }
    std::size_t files = 0;
    std::vector<std::string> diff;
    for (const auto& e : fs::recursive_directory_iterator(dirs[0])) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), dirs[0]);
        ++files;
        const std::string a = slurp(e.path());
        for (std::size_t k = 1; k < dirs.size(); ++k)
            if (!fs::exists(dirs[k] / rel) || slurp(dirs[k] / rel) != a) diff.push_back(rel.string());
    }
    for (std::size_t k = 1; k < dirs.size(); ++k)
        for (const auto& e : fs::recursive_directory_iterator(dirs[k]))
            if (e.is_regular_file() && !fs::exists(dirs[0] / fs::relative(e.path(), dirs[k])))
                diff.push_back(fs::relative(e.path(), dirs[k]).string());
    return {diff.empty() && files > 0,
            fmt("%zu files compared across workers 1, 8, 1: %zu differ", files, diff.size())};
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) out_root = argv[1];
    fs::create_directories(out_root);
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"propagator oracle", propagator_oracle},
        {"unitarity and group law", unitarity_group_law},
        {"operator identities", operator_identities},
        {"deterministic NLS", deterministic_nls},
        {"pseudo-conformal law", pseudo_conformal_law},
        {"Ito mass identity", ito_mass},
        {"Ito energy budget", ito_energy},
        {"tail decay", tail_decay},
        {"growth bound", growth},
        {"scattering Cauchy test", scattering},
        {"regime classifier", classifier},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += v.pass ? 0 : 1;
        std::printf("criterion %2zu %s  %s: %s [%.1f s]\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                    v.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    for (const auto& d : diagnostics) std::printf("diagnostic: %s\n", d.c_str());
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
