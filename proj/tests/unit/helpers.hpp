#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>

#include "snls/field.hpp"
#include "snls/norms.hpp"

namespace testing {

using snls::cplx;
using snls::Field;
using snls::GridSpec;

// Small deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : s_(seed * 0x9E3779B97F4A7C15ull + 1) {}
    std::uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }
    double uniform(double a, double b) { return a + (b - a) * (next() >> 11) * 0x1.0p-53; }
    int integer(int a, int b) { return a + static_cast<int>(next() % static_cast<std::uint64_t>(b - a + 1)); }
    double normal() {
        const double u = uniform(1e-300, 1.0), v = uniform(0.0, 1.0);
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
    }
    // Smooth random field: random low modes under a Gaussian envelope.
    Field smooth_field(const GridSpec& g, double width) {
        const double a = normal(), b = normal(), k = uniform(-1.0, 1.0), c = uniform(-0.5, 0.5);
        return Field::sample(g, [&](std::span<const double> x) {
            double r2 = 0.0, kx = 0.0;
            for (double v : x) {
                r2 += (v - c) * (v - c);
                kx += k * v;
            }
            return cplx(a, b) * std::exp(-0.5 * r2 / (width * width)) * std::polar(1.0, kx);
        });
    }
    Field white_field(const GridSpec& g) {
        Field f(g);
        for (auto& z : f.data()) z = cplx(normal(), normal());
        return f;
    }

private:
    std::uint64_t s_;
};

inline Field gaussian(const GridSpec& g, double width = 1.0, double amplitude = 1.0) {
    return Field::sample(g, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return cplx(amplitude * std::exp(-0.5 * r2 / (width * width)), 0.0);
    });
}

inline double rel_l2(const Field& a, const Field& b) { return snls::lp_norm(a - b, 2.0) / snls::lp_norm(b, 2.0); }

} // namespace testing
