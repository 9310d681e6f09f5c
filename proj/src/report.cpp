#include "snls/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "snls/errors.hpp"

namespace snls {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory: " + dir);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    return os;
}

void close_out(std::ofstream& os, const std::string& path) {
    os.close();
    if (!os) throw IoError("failed writing: " + path);
}

} // namespace

void write_text(const std::string& path, const std::string& text) {
    auto os = open_out(path);
    os << text;
    close_out(os, path);
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_functionals_csv(const std::string& path, const std::vector<FunctionalRecord>& series) {
    auto os = open_out(path);
    const auto cols = functional_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : series) {
        const auto row = functional_row(r);
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << "\n";
    }
    close_out(os, path);
}

std::vector<FunctionalRecord> read_functionals_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read: " + path);
    std::string line;
    if (!std::getline(is, line)) throw IoError("missing CSV header: " + path);
    std::vector<FunctionalRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        out.push_back(functional_from_row(row));
    }
    return out;
}

void write_ensemble_csv(const std::string& path, const EnsembleResult& r) {
    auto os = open_out(path);
    os << "t";
    for (const char* name : kTracked)
        for (const char* s : {"mean", "var", "min", "max", "supmean"}) os << "," << name << "_" << s;
    os << "\n";
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        os << format_double(r.times[k]);
        for (const auto& st : r.stats)
            for (const auto* v : {&st.mean, &st.variance, &st.min, &st.max, &st.sup_mean})
                os << "," << format_double((*v)[k]);
        os << "\n";
    }
    close_out(os, path);
}

void write_path_csv(const std::string& path, const EnsembleResult& r, std::size_t index) {
    auto os = open_out(path);
    os << "t";
    for (const char* name : kTracked) os << "," << name;
    os << "\n";
    const auto& s = r.series.at(index);
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << format_double(r.times[k]);
        for (double v : s[k]) os << "," << format_double(v);
        os << "\n";
    }
    close_out(os, path);
}

namespace {

Json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

} // namespace

Json manifest(const ExperimentConfig& cfg, const Json& extra) {
    Json j;
    j["code_version"] = SNLS_VERSION;
    j["config_hash"] = hex64(config_hash(cfg));
    Json c = Json::object();
    std::istringstream is(canonical_text(cfg));
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) c[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = c;
    j["seed_policy"] = "path i uses splitmix64(base_seed ^ splitmix64(i + 1))";
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

Json noise_manifest(const NoisePath& path) {
    const auto& s = path.spec();
    Json j;
    j["seed"] = s.seed;
    j["dt"] = path.dt();
    j["horizon"] = path.horizon();
    j["steps"] = path.steps();
    j["generator"] = "counter-based: Box-Muller on splitmix64 hashes of (seed, counter)";
    j["envelope"] = {{"kind", to_string(s.g.kind)}, {"alpha", s.g.alpha}, {"t0", s.g.t0}, {"t1", s.g.t1}, {"c", s.g.c}};
    j["phi"] = {{"kind", to_string(s.phi.kind)},
                {"width", s.phi.width},
                {"amplitude", s.phi.amplitude},
                {"center", s.phi.center},
                {"normalize", s.phi.normalize}};
    return j;
}

Json to_json(const ItoBudget& b) {
    return {{"functional", b.functional},   {"steps", b.steps},
            {"increment", num(b.increment)}, {"drift", num(b.drift)},
            {"correction", num(b.correction)}, {"correction_qv", num(b.correction_qv)},
            {"martingale", num(b.martingale)}, {"residual", num(b.residual)},
            {"residual_qv", num(b.residual_qv)}};
}

Json to_json(const RegimeReport& r) {
    Json w = Json::array();
    for (const auto& t : r.windows)
        w.push_back({{"id", t.id},
                     {"window", t.window},
                     {"decay_hypothesis", t.decay},
                     {"applies", t.applies},
                     {"required_alpha", num(t.required_alpha)},
                     {"noise_ok", t.noise_ok},
                     {"small_data", t.small_data}});
    return {{"n", r.n},
            {"sigma", num(r.sigma)},
            {"two_sigma", num(r.two_sigma)},
            {"alpha", num(r.alpha)},
            {"strauss", num(r.strauss)},
            {"long_range_bound", num(r.long_range_bound)},
            {"mass_critical_exponent", num(r.mass_critical)},
            {"energy_critical_exponent", num(r.energy_critical)},
            {"class", to_string(r.regime)},
            {"mass_criticality", to_string(r.mass_criticality)},
            {"required_alpha", num(r.required_alpha)},
            {"small_data_flag", r.small_data_flag},
            {"windows", w},
            {"warnings", r.warnings}};
}

Json to_json(const CauchyResult& r) {
    Json d = Json::array();
    for (const auto& row : r.differences) {
        Json jr = Json::array();
        for (double v : row) jr.push_back(num(v));
        d.push_back(jr);
    }
    return {{"norm", to_string(r.norm)},        {"checkpoints", r.times}, {"differences", d},
            {"successive", r.successive},       {"ratios", r.ratios},     {"contracting", r.contracting},
            {"monotone", r.monotone},           {"above_floor", r.above_floor},
            {"limit_norm", num(norm_of(r.limit, r.norm))}};
}

Json to_json(const StrichartzReport& r) {
    Json p = Json::array();
    for (const auto& m : r.pairs)
        p.push_back({{"label", m.pair.label},
                     {"p", num(m.pair.p)},
                     {"q", num(m.pair.q)},
                     {"morawetz", m.pair.morawetz},
                     {"final", num(m.cumulative.empty() ? 0.0 : m.cumulative.back())},
                     {"plateau", m.plateau},
                     {"last_window_increase", num(m.last_window_increase)}});
    return {{"pairs", p}, {"s1_lower_bound", num(r.s1_lower_bound)}};
}

Json to_json(const TailDecayFit& f) {
    return {{"median_slope", num(f.median_slope)}, {"q1", num(f.q1)},     {"q3", num(f.q3)},
            {"iqr", num(f.q3 - f.q1)},             {"fit_times", f.fit_times}, {"paths", f.slopes.size()},
            {"truncation_bound", num(f.truncation_bound)}};
}

Json to_json(const GrowthFit& f) {
    return {{"slope", num(f.slope)}, {"intercept", num(f.intercept)}, {"taus", f.taus}, {"values", f.values}};
}

std::string regime_table(const std::vector<RegimeReport>& reports) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-3s %-9s %-7s %-9s %-26s %-9s %-6s %s\n", "n", "2sigma", "alpha", "strauss",
                  "class", "mass", "a_req", "windows");
    os << buf;
    for (const auto& r : reports) {
        std::string wins;
        for (const auto& w : r.windows) {
            if (!w.applies) continue;
            if (!wins.empty()) wins += " ";
            wins += w.id;
            if (w.small_data) wins += "(small-data)";
            if (!w.noise_ok) wins += "(noise-unmet)";
        }
        std::snprintf(buf, sizeof buf, "%-3d %-9.6g %-7.4g %-9.6f %-26s %-9s %-6.3g %s\n", r.n, r.two_sigma, r.alpha,
                      r.strauss, to_string(r.regime).c_str(), to_string(r.mass_criticality).c_str(), r.required_alpha,
                      wins.c_str());
        os << buf;
    }
    return os.str();
}

std::string budget_table(const std::vector<ItoBudget>& budgets) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-24s %14s %14s %14s %14s %14s %14s\n", "functional", "increment", "drift",
                  "correction", "martingale", "residual", "residual_qv");
    os << buf;
    for (const auto& b : budgets) {
        std::snprintf(buf, sizeof buf, "%-24s %14.6e %14.6e %14.6e %14.6e %14.6e %14.6e\n", b.functional.c_str(),
                      b.increment, b.drift, b.correction, b.martingale, b.residual, b.residual_qv);
        os << buf;
    }
    return os.str();
}

} // namespace snls
