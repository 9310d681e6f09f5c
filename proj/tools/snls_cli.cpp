#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "snls/snls.h"

namespace {

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string out;
    bool strict = false;
    int points = 0;
    bool flip = false;
};

int fail(snls_status s) {
    std::fprintf(stderr, "error: %s\n", snls_last_error());
    return static_cast<int>(s);
}

int finish(snls_report* rep) {
    std::fputs(snls_report_text(rep), stdout);
    for (size_t i = 0; i < snls_report_warning_count(rep); ++i)
        std::fprintf(stderr, "warning: %s\n", snls_report_warning(rep, i));
    const int code = snls_report_passed(rep) ? 0 : SNLS_ERR_NUMERICAL;
    snls_report_free(rep);
    return code;
}

int run(const std::string& experiment, const Options& o) {
    snls_report* rep = nullptr;
    snls_status s = SNLS_OK;
    if (o.config.empty()) {
        const std::string out = o.out.empty() ? "out" : o.out;
        if (experiment == "selftest")
            s = snls_selftest(out.c_str(), o.points, o.flip ? 1 : 0, &rep);
        else if (experiment == "regimes")
            s = snls_regimes_default(out.c_str(), &rep);
        else {
            std::fprintf(stderr, "error: %s needs --config PATH\n", experiment.c_str());
            return SNLS_ERR_VALIDATION;
        }
        return s == SNLS_OK ? finish(rep) : fail(s);
    }
    if (experiment == "selftest") {
        std::fprintf(stderr, "error: selftest takes no --config\n");
        return SNLS_ERR_VALIDATION;
    }
    snls_config* cfg = nullptr;
    if ((s = snls_config_load(o.config.c_str(), &cfg)) != SNLS_OK) return fail(s);
    s = snls_config_set_experiment(cfg, experiment.c_str());
    if (s == SNLS_OK && o.seed) s = snls_config_set_seed(cfg, *o.seed);
    if (s == SNLS_OK && o.workers) s = snls_config_set_workers(cfg, *o.workers);
    if (s == SNLS_OK && !o.out.empty()) s = snls_config_set_output(cfg, o.out.c_str());
    if (s == SNLS_OK) s = snls_config_set_strict(cfg, o.strict ? 1 : 0);
    if (s == SNLS_OK) s = snls_config_finalize(cfg);
    if (s == SNLS_OK) s = snls_run(cfg, &rep);
    snls_config_free(cfg);
    return s == SNLS_OK ? finish(rep) : fail(s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic NLS solver and experiment harness"};
    app.set_version_flag("--version", snls_version());
    app.require_subcommand(1);
    Options o;
    const char* names[][2] = {
        {"simulate", "evolve one path and write functionals, snapshots and Ito budgets"},
        {"ensemble", "run many seeded paths and write aggregate statistics"},
        {"tail-decay", "fit the decay slope of the noise tail"},
        {"scatter-test", "Cauchy test of S(-t)u(t) at dyadic checkpoints"},
        {"growth-fit", "fit the growth exponent of E[sup E]"},
        {"regimes", "classify (n, sigma, alpha) against the scattering windows"},
        {"selftest", "run the oracle suite"},
    };
    for (auto& [name, help] : names) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "config file (key = value)");
        sub->add_option("--out", o.out, "output directory");
        if (std::string(name) == "selftest") {
            sub->add_option("--points", o.points, "grid points for the grid-based oracles")->check(CLI::NonNegativeNumber);
            sub->add_flag("--fault-flip-propagator", o.flip, "negative control: reverse the propagator sign");
            continue;
        }
        sub->add_option("--seed", o.seed, "base seed (noise.seed and ensemble.base_seed)");
        sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--strict", o.strict, "refuse to run when a referenced hypothesis is unmet");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : SNLS_ERR_VALIDATION;
    }
    return run(app.get_subcommands().front()->get_name(), o);
}
