#include "snls/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "snls/errors.hpp"

namespace snls {

const std::vector<KeyDoc>& config_keys() {
    static const std::vector<KeyDoc> keys = {
        {"experiment", "simulate", "simulate|ensemble|tail-decay|scatter-test|growth-fit|regimes|selftest"},
        {"grid.dim", "1", "spatial dimension n (1-3), required"},
        {"grid.points", "256", "points per axis (power of two >= 8), required"},
        {"grid.box_length", "40", "box length L per axis, required"},
        {"sim.sigma", "1", "nonlinearity exponent sigma in |u|^{2 sigma} u, required"},
        {"sim.dt", "0.001", "time step"},
        {"sim.t_end", "1", "final time (transformed equation: < 1 - 10 dt), required"},
        {"sim.snapshot_stride", "10", "steps between stored snapshots"},
        {"sim.equation", "deterministic", "snls|deterministic|random_shifted|transformed"},
        {"sim.boundary_guard", "strict", "strict|warn|off check of initial mass outside |x_j| <= L/4"},
        {"sim.linear_only", "false", "drop the nonlinear term"},
        {"initial.kind", "gaussian", "gaussian|plane_wave|zero|snapshot"},
        {"initial.amplitude", "1", "amplitude A"},
        {"initial.width", "1", "Gaussian width w in A exp(-|x-c|^2/(2w^2))"},
        {"initial.center", "0", "center c, comma separated per axis"},
        {"initial.wavenumber", "0", "carrier wavenumber k, comma separated per axis"},
        {"initial.path", "", "snapshot file for initial.kind = snapshot"},
        {"noise.phi.kind", "gaussian", "gaussian|gaussian_times_poly|zero"},
        {"noise.phi.width", "1", "profile width"},
        {"noise.phi.amplitude", "1", "profile amplitude (L2 norm when normalized)"},
        {"noise.phi.center", "0", "profile center, comma separated"},
        {"noise.phi.normalize", "false", "rescale phi to L2 norm = amplitude"},
        {"noise.g.kind", "constant", "power_law|indicator|constant|zero"},
        {"noise.g.alpha", "3", "power_law exponent, g = (1+t^2)^{-alpha/2}"},
        {"noise.g.t0", "0", "indicator start"},
        {"noise.g.t1", "1", "indicator end"},
        {"noise.g.c", "1", "constant value"},
        {"noise.seed", "0", "seed of the single-path experiments"},
        {"noise.horizon", "0", "noise horizon T_inf (0: sim.t_end)"},
        {"ensemble.size", "1", "number of paths"},
        {"ensemble.workers", "1", "worker threads (does not affect results)"},
        {"ensemble.base_seed", "0", "base seed; path i uses path_seed(base, i)"},
        {"ensemble.write_paths", "false", "write per-path functional CSVs"},
        {"output.dir", "out", "output directory"},
        {"tail.p", "2", "space exponent of the W^{1,p} tail norm"},
        {"tail.t_min", "0", "fit window start (0: horizon/8)"},
        {"tail.t_max", "0", "fit window end (0: horizon/2)"},
        {"tail.points", "9", "geometric fit times in the window"},
        {"tail.paths", "100", "number of paths"},
        {"tail.stride", "1", "partition stride of the sup-norm sampling"},
        {"scatter.checkpoints", "5,10,20,40", "checkpoint times (snapshots must exist there)"},
        {"scatter.norm", "Sigma", "L2|H1|Sigma"},
        {"scatter.target", "sigma_scattering", "l2_scattering|sigma_scattering|h1_scattering|none"},
        {"growth.taus", "0.5,1,2,4,8", "geometric tau grid"},
    };
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
}

using KeyMap = std::map<std::string, std::string>;

struct Reader {
    const KeyMap& m;

    const std::string& raw(const std::string& k) const { return m.at(k); }

    double num(const std::string& k) const {
        const auto& s = raw(k);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (trim(s.substr(pos)).empty()) return v;
        } catch (const std::exception&) {
        }
        throw ValidationError(k + ": expected a number, got '" + s + "'");
    }

    long long integer(const std::string& k) const {
        const auto& s = raw(k);
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(s, &pos);
            if (trim(s.substr(pos)).empty()) return v;
        } catch (const std::exception&) {
        }
        throw ValidationError(k + ": expected an integer, got '" + s + "'");
    }

    std::uint64_t u64(const std::string& k) const {
        const auto& s = raw(k);
        try {
            std::size_t pos = 0;
            if (!s.empty() && s[0] != '-') {
                const unsigned long long v = std::stoull(s, &pos);
                if (trim(s.substr(pos)).empty()) return v;
            }
        } catch (const std::exception&) {
        }
        throw ValidationError(k + ": expected a non-negative integer, got '" + s + "'");
    }

    bool boolean(const std::string& k) const {
        const auto& s = raw(k);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw ValidationError(k + ": expected true or false, got '" + s + "'");
    }

    std::vector<double> list(const std::string& k) const {
        std::vector<double> out;
        std::stringstream ss(raw(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (!trim(item.substr(pos)).empty()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ValidationError(k + ": expected a comma separated list of numbers, got '" + raw(k) + "'");
            }
        }
        if (out.empty()) throw ValidationError(k + ": empty list");
        return out;
    }

    // Per-axis vector; a single value applies to axis 0, remaining axes 0.
    std::array<double, 3> axes(const std::string& k) const {
        const auto v = list(k);
        if (v.size() > 3) throw ValidationError(k + ": at most 3 components");
        std::array<double, 3> out{0, 0, 0};
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
        return out;
    }

    template <class F>
    auto with_key(const std::string& k, F&& f) const -> decltype(f(raw(k))) {
        try {
            return f(raw(k));
        } catch (const ValidationError& e) {
            throw ValidationError(k + ": " + e.what());
        }
    }
};

std::string fmt_axes(const std::array<double, 3>& a, int dim) {
    std::vector<double> v(a.begin(), a.begin() + std::max(1, dim));
    return fmt_list(v);
}

KeyMap to_map(const ExperimentConfig& c) {
    KeyMap m;
    const auto& s = c.sim;
    const int dim = s.grid.size() ? s.grid.dim() : 1;
    m["experiment"] = c.experiment;
    m["grid.dim"] = std::to_string(s.grid.dim());
    m["grid.points"] = std::to_string(s.grid.points());
    m["grid.box_length"] = fmt(s.grid.box_length());
    m["sim.sigma"] = fmt(s.sigma);
    m["sim.dt"] = fmt(s.dt);
    m["sim.t_end"] = fmt(s.t_end);
    m["sim.snapshot_stride"] = std::to_string(s.snapshot_stride);
    m["sim.equation"] = to_string(s.equation);
    m["sim.boundary_guard"] = to_string(s.guard);
    m["sim.linear_only"] = s.linear_only ? "true" : "false";
    m["initial.kind"] = c.initial.kind;
    m["initial.amplitude"] = fmt(c.initial.amplitude);
    m["initial.width"] = fmt(c.initial.width);
    m["initial.center"] = fmt_axes(c.initial.center, dim);
    m["initial.wavenumber"] = fmt_axes(c.initial.wavenumber, dim);
    m["initial.path"] = c.initial.path;
    const NoiseSpec ns = s.noise.value_or(NoiseSpec{});
    m["noise.phi.kind"] = to_string(ns.phi.kind);
    m["noise.phi.width"] = fmt(ns.phi.width);
    m["noise.phi.amplitude"] = fmt(ns.phi.amplitude);
    m["noise.phi.center"] = fmt_axes(ns.phi.center, dim);
    m["noise.phi.normalize"] = ns.phi.normalize ? "true" : "false";
    m["noise.g.kind"] = to_string(ns.g.kind);
    m["noise.g.alpha"] = fmt(ns.g.alpha);
    m["noise.g.t0"] = fmt(ns.g.t0);
    m["noise.g.t1"] = fmt(ns.g.t1);
    m["noise.g.c"] = fmt(ns.g.c);
    m["noise.seed"] = std::to_string(ns.seed);
    m["noise.horizon"] = fmt(s.noise_horizon);
    m["ensemble.size"] = std::to_string(c.ensemble.size);
    m["ensemble.workers"] = std::to_string(c.ensemble.workers);
    m["ensemble.base_seed"] = std::to_string(c.ensemble.base_seed);
    m["ensemble.write_paths"] = c.ensemble.write_paths ? "true" : "false";
    m["output.dir"] = c.output_dir;
    m["tail.p"] = fmt(c.tail.p);
    m["tail.t_min"] = fmt(c.tail.t_min);
    m["tail.t_max"] = fmt(c.tail.t_max);
    m["tail.points"] = std::to_string(c.tail.points);
    m["tail.paths"] = std::to_string(c.tail.paths);
    m["tail.stride"] = std::to_string(c.tail.stride);
    m["scatter.checkpoints"] = fmt_list(c.scatter.checkpoints);
    m["scatter.norm"] = to_string(c.scatter.norm);
    m["scatter.target"] = c.scatter.target;
    m["growth.taus"] = fmt_list(c.growth.taus);
    return m;
}

const std::set<std::string> kExperiments = {"simulate",   "ensemble", "tail-decay", "scatter-test",
                                            "growth-fit", "regimes",  "selftest"};

ExperimentConfig from_map(const KeyMap& m) {
    Reader r{m};
    ExperimentConfig c;
    c.experiment = r.raw("experiment");
    if (!kExperiments.count(c.experiment)) throw ValidationError("experiment: unknown kind '" + c.experiment + "'");

    const long long dim = r.integer("grid.dim");
    const long long pts = r.integer("grid.points");
    const double len = r.num("grid.box_length");
    try {
        c.sim.grid = make_grid(static_cast<int>(dim), static_cast<int>(pts), len);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("grid: ") + e.what());
    }
    auto& s = c.sim;
    s.sigma = r.num("sim.sigma");
    s.dt = r.num("sim.dt");
    s.t_end = r.num("sim.t_end");
    s.snapshot_stride = static_cast<int>(r.integer("sim.snapshot_stride"));
    s.equation = r.with_key("sim.equation", [](const std::string& v) { return equation_from(v); });
    s.guard = r.with_key("sim.boundary_guard", [](const std::string& v) { return boundary_guard_from(v); });
    s.linear_only = r.boolean("sim.linear_only");

    c.initial.kind = r.raw("initial.kind");
    if (c.initial.kind != "gaussian" && c.initial.kind != "plane_wave" && c.initial.kind != "zero" &&
        c.initial.kind != "snapshot")
        throw ValidationError("initial.kind: unknown kind '" + c.initial.kind + "'");
    c.initial.amplitude = r.num("initial.amplitude");
    c.initial.width = r.num("initial.width");
    c.initial.center = r.axes("initial.center");
    c.initial.wavenumber = r.axes("initial.wavenumber");
    c.initial.path = r.raw("initial.path");

    NoiseSpec ns;
    ns.phi.kind = r.with_key("noise.phi.kind", [](const std::string& v) { return phi_kind_from(v); });
    ns.phi.width = r.num("noise.phi.width");
    ns.phi.amplitude = r.num("noise.phi.amplitude");
    ns.phi.center = r.axes("noise.phi.center");
    ns.phi.normalize = r.boolean("noise.phi.normalize");
    ns.g.kind = r.with_key("noise.g.kind", [](const std::string& v) { return envelope_kind_from(v); });
    ns.g.alpha = r.num("noise.g.alpha");
    ns.g.t0 = r.num("noise.g.t0");
    ns.g.t1 = r.num("noise.g.t1");
    ns.g.c = r.num("noise.g.c");
    ns.seed = r.u64("noise.seed");
    s.noise_horizon = r.num("noise.horizon");
    if (s.equation == Equation::snls || s.equation == Equation::random_shifted) s.noise = ns;
    else s.noise.reset();

    c.ensemble.size = static_cast<int>(r.integer("ensemble.size"));
    c.ensemble.workers = static_cast<int>(r.integer("ensemble.workers"));
    c.ensemble.base_seed = r.u64("ensemble.base_seed");
    c.ensemble.write_paths = r.boolean("ensemble.write_paths");
    c.output_dir = r.raw("output.dir");

    c.tail.p = r.num("tail.p");
    c.tail.t_min = r.num("tail.t_min");
    c.tail.t_max = r.num("tail.t_max");
    c.tail.points = static_cast<int>(r.integer("tail.points"));
    c.tail.paths = static_cast<int>(r.integer("tail.paths"));
    c.tail.stride = static_cast<int>(r.integer("tail.stride"));

    c.scatter.checkpoints = r.list("scatter.checkpoints");
    c.scatter.norm = r.with_key("scatter.norm", [](const std::string& v) { return norm_kind_from(v); });
    c.scatter.target = r.raw("scatter.target");
    c.growth.taus = r.list("growth.taus");
    return c;
}

} // namespace

double effective_alpha(const SimConfig& sim) {
    if (!sim.noise) return kInf;
    const auto& g = sim.noise->g;
    switch (g.kind) {
    case EnvelopeKind::power_law: return g.alpha;
    case EnvelopeKind::constant: return g.c == 0.0 ? kInf : 0.0;
    default: return kInf;
    }
}

namespace {

// Noise hypotheses referenced by an experiment's name are checked here.
void hypothesis_checks(ExperimentConfig& c) {
    std::vector<std::string> issues;
    const double alpha = effective_alpha(c.sim);
    const int n = c.sim.grid.dim();
    if (c.experiment == "scatter-test" && c.scatter.target != "none") {
        const auto rep = classify_regime(n, c.sim.sigma, alpha);
        const auto* w = rep.window(c.scatter.target);
        if (!w || w->id == "global_wellposedness")
            throw ValidationError("scatter.target: unknown scattering window '" + c.scatter.target + "'");
        std::ostringstream os;
        if (!w->applies) {
            os << c.scatter.target << ": 2sigma=" << 2 * c.sim.sigma << " outside the window " << w->window;
            issues.push_back(os.str());
            os.str("");
        }
        if (c.sim.noise && !w->noise_ok) {
            os << c.scatter.target << ": hypothesis \"" << w->decay << "\" unmet (alpha=" << alpha << ")";
            issues.push_back(os.str());
        }
        if (w->applies && w->small_data)
            issues.push_back(c.scatter.target + ": mass-critical case needs the small-data assumption");
    }
    if (c.experiment == "growth-fit" && c.sim.noise && !(alpha > 2.5)) {
        std::ostringstream os;
        os << "growth-fit: the growth bound assumes <t>^2 g in L^2 (alpha > 5/2), alpha=" << alpha;
        issues.push_back(os.str());
    }
    if (c.experiment == "tail-decay" && c.sim.noise && !(alpha > 0.5)) {
        std::ostringstream os;
        os << "tail-decay: the tail is infinite unless alpha > 1/2, alpha=" << alpha;
        issues.push_back(os.str());
    }
    for (auto& s : issues) {
        if (c.strict) throw ValidationError("strict: " + s);
        c.warnings.push_back(s);
    }
}

const std::set<std::string> kRequiredSim = {"grid.dim", "grid.points", "grid.box_length", "sim.sigma", "sim.t_end"};

} // namespace

void finalize(ExperimentConfig& c) {
    c.warnings.clear();
    if (!kExperiments.count(c.experiment)) throw ValidationError("experiment: unknown kind '" + c.experiment + "'");
    if (c.experiment == "selftest") return;
    if (c.experiment != "regimes") {
        validate(c.sim);
        if (c.ensemble.size < 1) throw ValidationError("ensemble.size must be >= 1");
    }
    if (c.ensemble.workers < 1) throw ValidationError("ensemble.workers must be >= 1");
    if (c.experiment == "scatter-test" && c.scatter.checkpoints.size() < 3)
        throw ValidationError("scatter.checkpoints: at least 3 checkpoints required");
    if (c.tail.paths < 1 || c.tail.points < 3 || c.tail.stride < 1)
        throw ValidationError("tail.paths >= 1, tail.points >= 3 and tail.stride >= 1 required");
    if (c.initial.kind == "snapshot") {
        if (c.initial.path.empty()) throw ValidationError("initial.path: required for initial.kind = snapshot");
        if (!std::filesystem::exists(c.initial.path))
            throw ValidationError("initial.path: file does not exist: " + c.initial.path);
    }
    if (c.initial.kind == "gaussian" && !(c.initial.width > 0.0))
        throw ValidationError("initial.width must be positive");
    if (c.experiment == "tail-decay" && !c.sim.noise)
        throw ValidationError("sim.equation: tail-decay needs sim.equation = snls (noise parameters)");
    hypothesis_checks(c);
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
    KeyMap defaults;
    std::set<std::string> known;
    for (const auto& k : config_keys()) {
        defaults[k.key] = k.fallback;
        known.insert(k.key);
    }
    KeyMap given;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key)) throw ValidationError(source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (given.count(key)) throw ValidationError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        given[key] = value;
    }
    KeyMap merged = defaults;
    for (const auto& [k, v] : given) merged[k] = v;
    ExperimentConfig c = from_map(merged);

    const bool needs_sim = c.experiment != "regimes" && c.experiment != "selftest";
    for (const auto& k : kRequiredSim) {
        if (c.experiment == "selftest") continue;
        if (!needs_sim && k != "grid.dim" && k != "sim.sigma") continue;
        if (!given.count(k)) throw ValidationError(source + ": missing required key '" + k + "'");
    }
    finalize(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path);
}

std::string echo(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : to_map(cfg)) out += k + " = " + v + "\n";
    return out;
}

std::string canonical_text(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : to_map(cfg)) {
        if (k == "ensemble.workers" || k == "output.dir") continue;
        out += k + " = " + v + "\n";
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) { return fnv1a64(canonical_text(cfg)); }

Field make_initial(const ExperimentConfig& cfg) {
    const auto& grid = cfg.sim.grid;
    const auto& in = cfg.initial;
    if (in.kind == "zero") return Field(grid);
    if (in.kind == "snapshot") {
        Field f = read_snapshot(in.path);
        if (!f.grid().same_as(grid)) throw ValidationError("initial.path: snapshot grid differs from grid.*");
        return Field(grid, f.data());
    }
    const bool gauss = in.kind == "gaussian";
    return Field::sample(grid, [&](std::span<const double> x) {
        double r2 = 0.0, phase = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            r2 += (x[a] - in.center[a]) * (x[a] - in.center[a]);
            phase += in.wavenumber[a] * x[a];
        }
        const double env = gauss ? std::exp(-0.5 * r2 / (in.width * in.width)) : 1.0;
        return in.amplitude * env * std::polar(1.0, phase);
    });
}

} // namespace snls
