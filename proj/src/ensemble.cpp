#include "snls/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "snls/errors.hpp"

namespace snls {

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
    if (workers < 1) throw ValidationError("worker count must be >= 1");
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::exception_ptr error;
    std::size_t failed_index = 0;

    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mutex);
                if (!error || i < failed_index) {
                    error = std::current_exception();
                    failed_index = i;
                }
                failed.store(true);
            }
        }
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(count, 1));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) {
        const std::string where = "path " + std::to_string(failed_index) + ": ";
        try {
            std::rethrow_exception(error);
        } catch (const ValidationError& e) {
            throw ValidationError(where + e.what());
        } catch (const IoError& e) {
            throw IoError(where + e.what());
        } catch (const std::exception& e) {
            throw NumericalError(where + e.what());
        }
    }
}

void aggregate(EnsembleResult& r) {
    const std::size_t P = r.series.size();
    const std::size_t T = r.times.size();
    for (std::size_t f = 0; f < kTracked.size(); ++f) {
        auto& s = r.stats[f];
        s.mean.assign(T, 0.0);
        s.variance.assign(T, 0.0);
        s.min.assign(T, std::numeric_limits<double>::infinity());
        s.max.assign(T, -std::numeric_limits<double>::infinity());
        s.sup_mean.assign(T, 0.0);
        if (P == 0) continue;
        for (std::size_t p = 0; p < P; ++p) {
            double running = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < T; ++k) {
                const double v = r.series[p][k][f];
                running = std::max(running, v);
                s.mean[k] += v;
                s.sup_mean[k] += running;
                s.min[k] = std::min(s.min[k], v);
                s.max[k] = std::max(s.max[k], v);
            }
        }
        for (std::size_t k = 0; k < T; ++k) {
            s.mean[k] /= static_cast<double>(P);
            s.sup_mean[k] /= static_cast<double>(P);
        }
        if (P > 1) {
            for (std::size_t p = 0; p < P; ++p)
                for (std::size_t k = 0; k < T; ++k) {
                    const double d = r.series[p][k][f] - s.mean[k];
                    s.variance[k] += d * d;
                }
            for (std::size_t k = 0; k < T; ++k) s.variance[k] /= static_cast<double>(P - 1);
        }
    }
}

EnsembleResult run_ensemble(const ExperimentConfig& cfg, const Field& u0, const PathExtractor& extract) {
    if (cfg.ensemble.size < 1) throw ValidationError("ensemble.size must be >= 1");
    const std::size_t P = static_cast<std::size_t>(cfg.ensemble.size);
    EnsembleResult r;
    r.paths = P;
    r.series.resize(P);
    r.seeds.resize(P);
    r.scalars.resize(P);
    std::vector<std::vector<std::string>> warns(P);
    std::vector<double> times;
    std::mutex times_mutex;

    parallel_for(P, cfg.ensemble.workers, [&](std::size_t i) {
        SimConfig sim = cfg.sim;
        const std::uint64_t seed = path_seed(cfg.ensemble.base_seed, i);
        if (sim.noise) sim.noise->seed = seed;
        const Trajectory tr = evolve(sim, u0);
        auto& out = r.series[i];
        out.resize(tr.series.size());
        for (std::size_t k = 0; k < tr.series.size(); ++k) {
            const auto& rec = tr.series[k];
            out[k] = {rec.M, rec.H, rec.V, rec.G, rec.E};
        }
        r.seeds[i] = seed;
        if (extract) r.scalars[i] = extract(tr);
        warns[i] = tr.warnings;
        if (i == 0) {
            std::lock_guard<std::mutex> lock(times_mutex);
            times = tr.times;
        }
    });
    r.times = std::move(times);
    for (std::size_t i = 0; i < P; ++i)
        for (const auto& w : warns[i]) r.warnings.push_back("path " + std::to_string(i) + ": " + w);
    aggregate(r);
    return r;
}

} // namespace snls
