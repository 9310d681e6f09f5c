#include "snls/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "snls/errors.hpp"
#include "snls/operators.hpp"
#include "snls/selftest.hpp"

namespace snls {

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void add_warnings(Outcome& o, const std::vector<std::string>& w, std::size_t cap = 20) {
    std::size_t n = 0;
    for (const auto& s : w) {
        if (n++ == cap) {
            o.warnings.push_back("... " + std::to_string(w.size() - cap) + " more warnings");
            break;
        }
        o.warnings.push_back(s);
    }
}

void write_snapshots(const std::string& dir, const Trajectory& tr) {
    const std::string sd = join(dir, "snapshots");
    ensure_directory(sd);
    for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "snap_%05zu.bin", i);
        write_snapshot(tr.snapshots[i].field, join(sd, name));
    }
    std::string idx = "index,t\n";
    for (std::size_t i = 0; i < tr.snapshots.size(); ++i)
        idx += std::to_string(i) + "," + format_double(tr.snapshots[i].t) + "\n";
    write_text(join(sd, "times.csv"), idx);
}

Trajectory simulate_one(const ExperimentConfig& cfg, Json& extra) {
    const Field u0 = make_initial(cfg);
    const auto& sim = cfg.sim;
    if (sim.equation == Equation::random_shifted && sim.noise) {
        const double horizon = sim.noise_horizon > 0.0 ? sim.noise_horizon : sim.t_end;
        const NoisePath path = sample_path(*sim.noise, horizon, sim.dt);
        const Field phi = make_profile(sim.noise->phi, sim.grid);
        auto tail = tail_series(path, phi);
        extra["noise_path"] = noise_manifest(path);
        extra["tail_truncation_bound"] = tail_truncation_bound(path, phi);
        return evolve_random(sim, u0, tail);
    }
    Trajectory tr = evolve(sim, u0);
    if (tr.noise_path) extra["noise_path"] = noise_manifest(*tr.noise_path);
    return tr;
}

Outcome simulate(const ExperimentConfig& cfg) {
    Outcome o;
    Json extra = Json::object();
    const Trajectory tr = simulate_one(cfg, extra);
    ensure_directory(cfg.output_dir);
    write_functionals_csv(join(cfg.output_dir, "functionals.csv"), tr.series);
    write_snapshots(cfg.output_dir, tr);

    std::vector<ItoBudget> budgets{ito_mass_budget(tr), ito_energy_budget(tr)};
    Json res;
    res["budgets"] = {to_json(budgets[0]), to_json(budgets[1])};
    if (tr.snapshots.size() >= 2) res["strichartz"] = to_json(strichartz_monitor(tr, default_pairs(cfg.sim.grid.dim())));
    const auto& a = tr.series.front();
    const auto& b = tr.series.back();
    res["mass_drift_relative"] = a.M > 0 ? (b.M - a.M) / a.M : 0.0;
    res["hamiltonian_drift_relative"] = a.H > 0 ? (b.H - a.H) / a.H : 0.0;
    res["steps"] = tr.series.size() - 1;
    write_json(join(cfg.output_dir, "budgets.json"), res["budgets"]);
    extra["result"] = res;
    write_json(join(cfg.output_dir, "manifest.json"), manifest(cfg, extra));

    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "simulate: %s, %zu steps, t_end=%g\n", to_string(cfg.sim.equation).c_str(),
                  tr.series.size() - 1, cfg.sim.t_end);
    os << buf;
    std::snprintf(buf, sizeof buf, "  M: %.12g -> %.12g\n  H: %.12g -> %.12g\n  E: %.12g -> %.12g\n", a.M, b.M, a.H,
                  b.H, a.E, b.E);
    os << buf;
    os << budget_table(budgets);
    o.text = os.str();
    o.result = res;
    add_warnings(o, tr.warnings);
    return o;
}

Outcome ensemble(const ExperimentConfig& cfg) {
    Outcome o;
    const Field u0 = make_initial(cfg);
    const auto r = run_ensemble(cfg, u0, [](const Trajectory& tr) {
        const auto mb = ito_mass_budget(tr);
        const auto eb = ito_energy_budget(tr);
        return std::vector<double>{mb.increment, mb.residual, eb.residual};
    });
    ensure_directory(cfg.output_dir);
    write_ensemble_csv(join(cfg.output_dir, "aggregates.csv"), r);
    if (cfg.ensemble.write_paths) {
        const std::string pd = join(cfg.output_dir, "paths");
        ensure_directory(pd);
        for (std::size_t i = 0; i < r.paths; ++i) {
            char name[64];
            std::snprintf(name, sizeof name, "path_%05zu.csv", i);
            write_path_csv(join(pd, name), r, i);
        }
    }
    // mass identity: E[M(T) - M(0)] = ||phi||^2 int_0^T g^2
    double mean = 0.0, var = 0.0;
    for (const auto& s : r.scalars) mean += s[0];
    mean /= static_cast<double>(r.paths);
    for (const auto& s : r.scalars) var += (s[0] - mean) * (s[0] - mean);
    const double se = r.paths > 1 ? std::sqrt(var / (r.paths - 1) / r.paths) : 0.0;
    double expected = 0.0;
    if (cfg.sim.noise) {
        const double m = lp_norm(make_profile(cfg.sim.noise->phi, cfg.sim.grid), 2.0);
        // discrete Ito correction sum, exact for the scheme in expectation
        for (std::size_t k = 0; k + 1 < r.times.size(); ++k) {
            const double g = g_value(cfg.sim.noise->g, r.times[k]);
            expected += m * m * g * g * (r.times[k + 1] - r.times[k]);
        }
    }
    Json res;
    res["paths"] = r.paths;
    res["mass_increment_mean"] = mean;
    res["mass_increment_standard_error"] = se;
    res["mass_increment_expected"] = expected;
    res["mass_increment_z"] = se > 0 ? (mean - expected) / se : 0.0;
    Json seeds = Json::array();
    for (auto s : r.seeds) seeds.push_back(hex64(s));
    write_json(join(cfg.output_dir, "manifest.json"), manifest(cfg, {{"seeds", seeds}, {"result", res}}));

    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "ensemble: %zu paths, t_end=%g\n  E[M(T)-M(0)] = %.6g +- %.3g (expected %.6g)\n",
                  r.paths, cfg.sim.t_end, mean, se, expected);
    os << buf;
    const auto& E = r.stats[4];
    std::snprintf(buf, sizeof buf, "  E[E(T)] = %.6g, E[sup E] = %.6g\n", E.mean.back(), E.sup_mean.back());
    os << buf;
    o.text = os.str();
    o.result = res;
    add_warnings(o, r.warnings);
    return o;
}

Outcome tail_decay(const ExperimentConfig& cfg) {
    Outcome o;
    if (!cfg.sim.noise) throw ValidationError("tail-decay needs noise parameters (sim.equation = snls)");
    const double horizon = cfg.sim.noise_horizon > 0.0 ? cfg.sim.noise_horizon : cfg.sim.t_end;
    const Field phi = make_profile(cfg.sim.noise->phi, cfg.sim.grid);
    std::vector<NoisePath> paths;
    paths.reserve(cfg.tail.paths);
    for (int i = 0; i < cfg.tail.paths; ++i) {
        NoiseSpec ns = *cfg.sim.noise;
        ns.seed = path_seed(cfg.ensemble.base_seed, static_cast<std::uint64_t>(i));
        paths.push_back(sample_path(ns, horizon, cfg.sim.dt));
    }
    TailFitWindow w;
    w.t_min = cfg.tail.t_min > 0.0 ? cfg.tail.t_min : horizon / 8.0;
    w.t_max = cfg.tail.t_max > 0.0 ? cfg.tail.t_max : horizon / 2.0;
    w.points = cfg.tail.points;
    const auto fit = tail_decay_fit(paths, phi, cfg.tail.p, w, cfg.tail.stride);
    Json res = to_json(fit);
    const double alpha = effective_alpha(cfg.sim);
    res["theory_slope"] = std::isfinite(alpha) ? Json(-alpha + 0.5) : Json("n/a");
    ensure_directory(cfg.output_dir);
    std::string csv = "path,seed,slope\n";
    for (std::size_t i = 0; i < fit.slopes.size(); ++i)
        csv += std::to_string(i) + "," + hex64(paths[i].spec().seed) + "," + format_double(fit.slopes[i]) + "\n";
    write_text(join(cfg.output_dir, "tail_slopes.csv"), csv);
    write_json(join(cfg.output_dir, "tail_decay.json"), res);
    write_json(join(cfg.output_dir, "manifest.json"),
               manifest(cfg, {{"noise_path_example", noise_manifest(paths.front())}, {"result", res}}));
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "tail-decay: %zu paths, horizon %g, window [%g, %g]\n  median slope %.4f (IQR %.4f .. %.4f), "
                  "theory %.4f\n  truncation bound E||tail beyond horizon||^2 = %.3e\n",
                  fit.slopes.size(), horizon, w.t_min, w.t_max, fit.median_slope, fit.q1, fit.q3, -alpha + 0.5,
                  fit.truncation_bound);
    o.text = buf;
    o.result = res;
    return o;
}

Outcome scatter_test(const ExperimentConfig& cfg) {
    Outcome o;
    Json extra = Json::object();
    const Trajectory tr = simulate_one(cfg, extra);
    const auto r = scattering_cauchy(tr, cfg.scatter.norm, cfg.scatter.checkpoints);
    Json res = to_json(r);
    ensure_directory(cfg.output_dir);
    write_functionals_csv(join(cfg.output_dir, "functionals.csv"), tr.series);
    write_snapshot(r.limit, join(cfg.output_dir, "u_plus.bin"));
    write_json(join(cfg.output_dir, "scatter.json"), res);
    extra["result"] = res;
    write_json(join(cfg.output_dir, "manifest.json"), manifest(cfg, extra));
    std::ostringstream os;
    os << "scatter-test: norm " << to_string(r.norm) << "\n";
    char buf[256];
    for (std::size_t k = 0; k < r.successive.size(); ++k) {
        std::snprintf(buf, sizeof buf, "  ||w(%g) - w(%g)|| = %.6e\n", r.times[k + 1], r.times[k], r.successive[k]);
        os << buf;
    }
    for (std::size_t k = 0; k < r.ratios.size(); ++k) {
        std::snprintf(buf, sizeof buf, "  ratio at t=%g: %.4f\n", r.times[k + 1], r.ratios[k]);
        os << buf;
    }
    os << "  contracting (all ratios < 0.8): " << (r.contracting ? "yes" : "no") << "\n";
    os << "  no decay below floor (min >= 0.5 first): " << (r.above_floor ? "yes" : "no") << "\n";
    o.text = os.str();
    o.result = res;
    add_warnings(o, tr.warnings);
    return o;
}

Outcome growth(const ExperimentConfig& cfg) {
    Outcome o;
    const Field u0 = make_initial(cfg);
    const auto r = run_ensemble(cfg, u0);
    std::vector<double> taus, vals;
    for (double tau : cfg.growth.taus) {
        if (tau > cfg.sim.t_end * (1 + 1e-12)) throw ValidationError("growth.taus: tau beyond sim.t_end");
        const auto k = static_cast<std::size_t>(std::llround(tau / cfg.sim.dt));
        taus.push_back(tau);
        vals.push_back(r.stats[4].sup_mean.at(k));
    }
    const auto fit = growth_fit(taus, vals);
    const int n = cfg.sim.grid.dim();
    const double s2 = 2.0 * cfg.sim.sigma;
    const bool sub = s2 < 4.0 / n && std::abs(s2 - 4.0 / n) > 1e-12;
    const double bound = sub ? 2.0 - n * cfg.sim.sigma : 0.0;
    Json res = to_json(fit);
    res["bound_exponent"] = bound;
    res["paths"] = r.paths;
    ensure_directory(cfg.output_dir);
    write_ensemble_csv(join(cfg.output_dir, "aggregates.csv"), r);
    write_json(join(cfg.output_dir, "growth.json"), res);
    write_json(join(cfg.output_dir, "manifest.json"), manifest(cfg, {{"result", res}}));
    char buf[256];
    std::snprintf(buf, sizeof buf, "growth-fit: %zu paths, slope of E[sup E] vs (1+tau): %.4f (bound %.4f)\n", r.paths,
                  fit.slope, bound);
    o.text = buf;
    o.result = res;
    add_warnings(o, r.warnings);
    return o;
}

Outcome regimes_for(const std::vector<RegimeReport>& reps, const std::string& dir) {
    Outcome o;
    Json arr = Json::array();
    for (const auto& r : reps) {
        arr.push_back(to_json(r));
        for (const auto& w : r.warnings) o.warnings.push_back(w);
    }
    ensure_directory(dir);
    write_json(join(dir, "regimes.json"), arr);
    write_text(join(dir, "regimes.txt"), regime_table(reps));
    o.text = regime_table(reps);
    o.result = arr;
    return o;
}

} // namespace


Outcome run_default_regimes(const std::string& output_dir) {
    const std::vector<std::tuple<int, double, double>> cases = {
        {1, 0.25, 10.0}, {1, 0.75, 3.0}, {1, 1.5, 3.0}, {1, 2.0, 3.0}, {1, 3.0, 3.0}, {2, 1.0, 3.0},
        {2, 1.5, 2.0},   {3, 0.5, 3.0},  {3, 1.0, 3.0}, {3, 2.0, 3.0}, {3, 0.25, 3.0},
    };
    std::vector<RegimeReport> reps;
    for (const auto& [n, sigma, alpha] : cases) reps.push_back(classify_regime(n, sigma, alpha));
    return regimes_for(reps, output_dir);
}

Outcome run_selftest_experiment(const std::string& output_dir, const SelftestOptions& opts) {
    Outcome o;
    const auto rep = run_selftest(opts);
    Json arr = Json::array();
    for (const auto& c : rep.checks)
        arr.push_back({{"name", c.name}, {"tolerance", c.tolerance}, {"measured", c.measured}, {"passed", c.passed},
                       {"note", c.note}});
    Json res = {{"checks", arr}, {"all_passed", rep.all_passed()}, {"warnings", rep.warnings}};
    ensure_directory(output_dir);
    write_json(join(output_dir, "selftest.json"), res);
    o.text = rep.table();
    o.result = res;
    o.passed = rep.all_passed();
    return o;
}

Outcome run_experiment(const ExperimentConfig& cfg) {
    Outcome o;
    const auto& e = cfg.experiment;
    if (e == "simulate") o = simulate(cfg);
    else if (e == "ensemble") o = ensemble(cfg);
    else if (e == "tail-decay") o = tail_decay(cfg);
    else if (e == "scatter-test") o = scatter_test(cfg);
    else if (e == "growth-fit") o = growth(cfg);
    else if (e == "regimes") {
        std::vector<RegimeReport> reps{classify_regime(cfg.sim.grid.dim(), cfg.sim.sigma, effective_alpha(cfg.sim))};
        o = regimes_for(reps, cfg.output_dir);
    } else if (e == "selftest") {
        o = run_selftest_experiment(cfg.output_dir, {});
    } else
        throw ValidationError("unknown experiment '" + e + "'");
    std::vector<std::string> w = cfg.warnings;
    w.insert(w.end(), o.warnings.begin(), o.warnings.end());
    o.warnings = std::move(w);
    return o;
}

} // namespace snls
