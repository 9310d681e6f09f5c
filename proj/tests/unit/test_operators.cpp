#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "snls/errors.hpp"
#include "snls/fft.hpp"
#include "snls/operators.hpp"

using namespace snls;
using namespace testing;

TEST_CASE("free propagator") {
    const GridSpec g = make_grid(1, 64, 2 * std::numbers::pi);
    Gen gen(1);
    const Field f = gen.white_field(g);
    CHECK(rel_l2(propagate(f, 0.0), f) == 0.0);
    // single mode picks up e^{itk^2}
    const Field w = Field::sample(g, [](std::span<const double> x) { return std::polar(1.0, 3.0 * x[0]); });
    const Field p = propagate(w, 0.7);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(p[i] - std::polar(1.0, 0.7 * 9.0) * w[i]) < 1e-13);

    // closed-form Gaussian: (1 - 2it)^{-1/2} e^{-x^2/(2(1-2it))}
    const GridSpec G = make_grid(1, 1024, 60.0);
    const cplx a(1.0, -2.0);
    const Field exact = Field::sample(G, [&](std::span<const double> x) {
        return std::exp(-x[0] * x[0] / (2.0 * a)) / std::sqrt(a);
    });
    CHECK(rel_l2(propagate(gaussian(G), 1.0), exact) < 1e-8);
}

TEST_CASE("propagator is a unitary group on random fields") {
    Gen gen(2);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = gen.integer(1, 3);
        const GridSpec g = make_grid(n, n == 3 ? 16 : 32, gen.uniform(3.0, 40.0));
        const Field f = gen.white_field(g);
        const double t = gen.uniform(-2.0, 2.0), s = gen.uniform(-2.0, 2.0);
        CHECK(std::abs(lp_norm(propagate(f, t), 2.0) / lp_norm(f, 2.0) - 1.0) < 1e-12);
        CHECK(rel_l2(propagate(propagate(f, t), s), propagate(f, t + s)) < 1e-12);
        CHECK(rel_l2(propagate(propagate(f, t), -t), f) < 1e-12);
    }
}

TEST_CASE("J operator") {
    const GridSpec g = make_grid(1, 1024, 40.0);
    const Field u = gaussian(g);
    CHECK(rel_l2(apply_J(u, 0.0)[0], coordinate_multiply(u, 0)) == 0.0);
    // J(t) = S(t) x S(-t)
    const double t = 0.5;
    CHECK(rel_l2(apply_J(u, t)[0], propagate(coordinate_multiply(propagate(u, -t), 0), t)) < 1e-6);
    // J(t) = M_{-1/t} (-2it grad) M_{1/t} at t = 1
    Field d = derivative(modulate(u, 1.0), 0);
    d *= cplx(0.0, -2.0);
    CHECK(lp_norm(apply_J(u, 1.0)[0] - modulate(d, -1.0), 2.0) < 1e-8);
    // the other ordering differs by 4it grad: it is not a discretization error
    const Field wrong = propagate(coordinate_multiply(propagate(u, t), 0), -t);
    CHECK(rel_l2(apply_J(u, t)[0], wrong) > 0.1);
}

TEST_CASE("dilation") {
    Gen gen(4);
    const GridSpec g = make_grid(1, 1024, 40.0);
    const Field u = gaussian(g);
    CHECK(rel_l2(dilate(u, 1.0), u) == 0.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double beta = gen.uniform(0.5, 2.0);
        const Field f = gen.smooth_field(g, 1.5);
        CHECK(lp_norm(dilate(f, beta), 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-13));
        CHECK(dilate(f, beta).grid().box_length() == doctest::Approx(40.0 / beta));
    }
    // S(-t) D_beta = D_beta S(-beta^2 t)
    const double t = 0.3, beta = 1.7;
    CHECK(rel_l2(propagate(dilate(u, beta), -t), dilate(propagate(u, -beta * beta * t), beta)) < 1e-10);
    CHECK_THROWS_AS(dilate(u, 0.0), ValidationError);
}

TEST_CASE("modulation") {
    const GridSpec g = make_grid(1, 1024, 40.0);
    Gen gen(8);
    const Field f = gen.smooth_field(g, 2.0);
    CHECK(rel_l2(modulate(f, 0.0), f) == 0.0);
    const Field m = modulate(f, 0.8);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(std::abs(m[i]) - std::abs(f[i])) < 1e-15);
    // S(-t) M_theta = M_{theta/c} D_{1/c} S(-t/c), c = 1 + theta t
    const Field u = gaussian(g);
    const double th = 1.0, t = 0.3, c = 1.0 + th * t;
    const Field lhs = propagate(modulate(u, th), -t);
    const Field rhs = modulate(dilate(propagate(u, -t / c), 1.0 / c), th / c);
    CHECK(rel_l2(regrid(rhs, lhs.grid()), lhs) < 1e-6);
    // Nyquist guard |theta| (L/2) dx < pi
    CHECK(modulation_resolved(g, 1.0));
    CHECK_FALSE(modulation_resolved(make_grid(1, 64, 40.0), 1.0));
    CHECK_THROWS_AS(modulate(Field(make_grid(1, 64, 40.0)), 1.0), ValidationError);
}

TEST_CASE("regrid is exact on band-limited data") {
    const GridSpec a = make_grid(1, 64, 2 * std::numbers::pi);
    const GridSpec b = make_grid(1, 128, 2 * std::numbers::pi);
    auto f = [](std::span<const double> x) { return cplx(std::cos(3 * x[0]), std::sin(5 * x[0])); };
    CHECK(rel_l2(regrid(Field::sample(a, f), b), Field::sample(b, f)) < 1e-13);
    CHECK(rel_l2(regrid(Field::sample(b, f), a), Field::sample(a, f)) < 1e-13);
    // different box: the periodic interpolant at the new nodes
    const GridSpec big = make_grid(1, 512, 40.0), small = make_grid(1, 512, 30.0);
    CHECK(rel_l2(regrid(gaussian(big), small), gaussian(small)) < 1e-12);
}

TEST_CASE("pseudo-conformal map") {
    const GridSpec g = make_grid(1, 1024, 40.0);
    const Field u = gaussian(g);
    Gen gen(9);
    for (int trial = 0; trial < 5; ++trial) {
        const double s = gen.uniform(0.0, 2.0);
        const auto [ut, t] = pseudo_conformal(u, {MapDirection::forward, s});
        CHECK(t == doctest::Approx(s / (1 + s)).epsilon(1e-15));
        CHECK(lp_norm(ut, 2.0) == doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-13));
        const auto [back, s2] = pseudo_conformal(ut, {MapDirection::inverse, t});
        CHECK(s2 == doctest::Approx(s).epsilon(1e-13));
        CHECK(back.grid().same_as(g));
        CHECK(rel_l2(back, u) < 1e-12);
    }
    const auto [u0, t0] = pseudo_conformal(u, {MapDirection::forward, 0.0});
    CHECK(t0 == 0.0);
    CHECK(rel_l2(u0, modulate(u, 1.0)) < 1e-15);
    CHECK_THROWS_AS(pseudo_conformal(u, {MapDirection::inverse, 1.0}), ValidationError);
}
