#include "snls/snls.h"

#include <complex>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "snls/analysis.hpp"
#include "snls/config.hpp"
#include "snls/errors.hpp"
#include "snls/experiments.hpp"
#include "snls/norms.hpp"
#include "snls/operators.hpp"
#include "snls/selftest.hpp"

struct snls_config {
    snls::ExperimentConfig cfg;
    std::string echo;
};

struct snls_report {
    snls::Outcome outcome;
    std::string json;
};

struct snls_grid {
    snls::GridSpec grid;
};

struct snls_field {
    snls::Field field;
};

namespace {

thread_local std::string last_error;

template <class F>
snls_status guard(F&& f) {
    last_error.clear();
    try {
        f();
        return SNLS_OK;
    } catch (const snls::ValidationError& e) {
        last_error = e.what();
        return SNLS_ERR_VALIDATION;
    } catch (const snls::NumericalError& e) {
        last_error = e.what();
        return SNLS_ERR_NUMERICAL;
    } catch (const snls::IoError& e) {
        last_error = e.what();
        return SNLS_ERR_IO;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SNLS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return SNLS_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return SNLS_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) throw snls::ValidationError(std::string("null argument: ") + what);
}

snls_report* make_report(snls::Outcome o) {
    auto r = std::make_unique<snls_report>();
    r->json = o.result.dump(2);
    r->outcome = std::move(o);
    return r.release();
}

} // namespace

extern "C" {

const char* snls_version(void) { return SNLS_VERSION; }
const char* snls_last_error(void) { return last_error.c_str(); }

snls_status snls_config_load(const char* path, snls_config** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        auto c = std::make_unique<snls_config>();
        c->cfg = snls::load_config(path);
        *out = c.release();
    });
}

snls_status snls_config_parse(const char* text, snls_config** out) {
    return guard([&] {
        need(text, "text");
        need(out, "out");
        auto c = std::make_unique<snls_config>();
        c->cfg = snls::parse_config(text);
        *out = c.release();
    });
}

void snls_config_free(snls_config* cfg) { delete cfg; }

snls_status snls_config_set_experiment(snls_config* cfg, const char* experiment) {
    return guard([&] {
        need(cfg, "cfg");
        need(experiment, "experiment");
        cfg->cfg.experiment = experiment;
    });
}

snls_status snls_config_set_seed(snls_config* cfg, uint64_t seed) {
    return guard([&] {
        need(cfg, "cfg");
        cfg->cfg.ensemble.base_seed = seed;
        if (cfg->cfg.sim.noise) cfg->cfg.sim.noise->seed = seed;
    });
}

snls_status snls_config_set_workers(snls_config* cfg, int workers) {
    return guard([&] {
        need(cfg, "cfg");
        if (workers < 1) throw snls::ValidationError("--workers: must be >= 1");
        cfg->cfg.ensemble.workers = workers;
    });
}

snls_status snls_config_set_output(snls_config* cfg, const char* dir) {
    return guard([&] {
        need(cfg, "cfg");
        need(dir, "dir");
        if (!*dir) throw snls::ValidationError("--out: empty directory");
        cfg->cfg.output_dir = dir;
    });
}

snls_status snls_config_set_strict(snls_config* cfg, int strict) {
    return guard([&] {
        need(cfg, "cfg");
        cfg->cfg.strict = strict != 0;
    });
}

snls_status snls_config_finalize(snls_config* cfg) {
    return guard([&] {
        need(cfg, "cfg");
        snls::finalize(cfg->cfg);
    });
}

const char* snls_config_echo(snls_config* cfg) {
    if (!cfg) return "";
    cfg->echo = snls::echo(cfg->cfg);
    return cfg->echo.c_str();
}

uint64_t snls_config_hash(const snls_config* cfg) { return cfg ? snls::config_hash(cfg->cfg) : 0; }

snls_status snls_run(const snls_config* cfg, snls_report** out) {
    return guard([&] {
        need(cfg, "cfg");
        need(out, "out");
        *out = make_report(snls::run_experiment(cfg->cfg));
    });
}

snls_status snls_selftest(const char* output_dir, int points, int flip_propagator, snls_report** out) {
    return guard([&] {
        need(output_dir, "output_dir");
        need(out, "out");
        snls::SelftestOptions opts;
        opts.points = points;
        opts.flip_propagator = flip_propagator != 0;
        *out = make_report(snls::run_selftest_experiment(output_dir, opts));
    });
}

snls_status snls_regimes_default(const char* output_dir, snls_report** out) {
    return guard([&] {
        need(output_dir, "output_dir");
        need(out, "out");
        *out = make_report(snls::run_default_regimes(output_dir));
    });
}

snls_status snls_classify_regime(int n, double sigma, double alpha, snls_report** out) {
    return guard([&] {
        need(out, "out");
        const auto r = snls::classify_regime(n, sigma, alpha);
        snls::Outcome o;
        o.text = snls::regime_table({r});
        o.result = snls::to_json(r);
        o.warnings = r.warnings;
        *out = make_report(std::move(o));
    });
}

const char* snls_report_text(const snls_report* r) { return r ? r->outcome.text.c_str() : ""; }
const char* snls_report_json(const snls_report* r) { return r ? r->json.c_str() : ""; }
size_t snls_report_warning_count(const snls_report* r) { return r ? r->outcome.warnings.size() : 0; }
const char* snls_report_warning(const snls_report* r, size_t i) {
    return r && i < r->outcome.warnings.size() ? r->outcome.warnings[i].c_str() : "";
}
int snls_report_passed(const snls_report* r) { return r && r->outcome.passed ? 1 : 0; }
void snls_report_free(snls_report* r) { delete r; }

snls_status snls_grid_create(int dim, int points, double box_length, snls_grid** out) {
    return guard([&] {
        need(out, "out");
        *out = new snls_grid{snls::make_grid(dim, points, box_length)};
    });
}

void snls_grid_free(snls_grid* g) { delete g; }
size_t snls_grid_size(const snls_grid* g) { return g ? g->grid.size() : 0; }

snls_status snls_field_create(const snls_grid* g, const double* values, snls_field** out) {
    return guard([&] {
        need(g, "grid");
        need(out, "out");
        std::vector<std::complex<double>> v(g->grid.size());
        if (values)
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = {values[2 * i], values[2 * i + 1]};
        *out = new snls_field{snls::Field(g->grid, std::move(v))};
    });
}

void snls_field_free(snls_field* f) { delete f; }

snls_status snls_field_values(const snls_field* f, double* values, size_t capacity) {
    return guard([&] {
        need(f, "field");
        need(values, "values");
        const auto v = f->field.values();
        if (capacity < 2 * v.size()) throw snls::ValidationError("capacity below 2*size");
        for (std::size_t i = 0; i < v.size(); ++i) {
            values[2 * i] = v[i].real();
            values[2 * i + 1] = v[i].imag();
        }
    });
}

snls_status snls_propagate(snls_field* f, double t) {
    return guard([&] {
        need(f, "field");
        f->field = snls::propagate(f->field, t);
    });
}

snls_status snls_field_norm(const snls_field* f, double p, double* out) {
    return guard([&] {
        need(f, "field");
        need(out, "out");
        *out = snls::lp_norm(f->field, p);
    });
}

snls_status snls_field_read(const char* path, snls_field** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new snls_field{snls::read_snapshot(path)};
    });
}

snls_status snls_field_write(const snls_field* f, const char* path) {
    return guard([&] {
        need(f, "field");
        need(path, "path");
        snls::write_snapshot(f->field, path);
    });
}

} // extern "C"
