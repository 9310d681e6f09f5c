#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "helpers.hpp"
#include "snls/errors.hpp"
#include "snls/fft.hpp"
#include "snls/norms.hpp"

using namespace snls;
using namespace testing;
constexpr double pi = std::numbers::pi;

TEST_CASE("grid layout") {
    const GridSpec g = make_grid(1, 8, 2 * pi);
    CHECK(g.dx() == doctest::Approx(pi / 4).epsilon(1e-15));
    const std::vector<double> xi{0, 1, 2, 3, -4, -3, -2, -1};
    for (int j = 0; j < 8; ++j) CHECK(g.frequencies()[j] == doctest::Approx(xi[j]).epsilon(1e-15));
    CHECK(g.coordinates()[0] == doctest::Approx(-pi));

    const GridSpec g2 = make_grid(2, 64, 40.0);
    CHECK(g2.size() == 4096);
    CHECK(g2.dx() == 0.625);
    CHECK(g2.cell_volume() == doctest::Approx(0.625 * 0.625));
    CHECK(g2.axis_index(64 * 3 + 5, 0) == 3);
    CHECK(g2.axis_index(64 * 3 + 5, 1) == 5);

    CHECK_THROWS_AS(make_grid(1, 7, 10.0), ValidationError);
    CHECK_THROWS_AS(make_grid(4, 8, 10.0), ValidationError);
    CHECK_THROWS_AS(make_grid(1, 8, -1.0), ValidationError);
    CHECK(make_grid(1, 8, 10.0).same_as(make_grid(1, 8, 10.0 * (1 + 1e-15))));
    CHECK_FALSE(make_grid(1, 8, 10.0).same_as(make_grid(1, 16, 10.0)));
}

TEST_CASE("field construction validates") {
    const GridSpec g = make_grid(1, 8, 1.0);
    CHECK_THROWS_AS(Field(g, std::vector<cplx>(7)), ValidationError);
    std::vector<cplx> v(8);
    v[3] = cplx(std::nan(""), 0);
    CHECK_THROWS_AS(Field(g, v), NumericalError);
}

TEST_CASE("snapshot round trip is exact") {
    Gen gen(3);
    const GridSpec g = make_grid(2, 16, 7.5);
    const Field f = gen.white_field(g);
    const auto path = (std::filesystem::temp_directory_path() / "snls_snapshot_test.bin").string();
    write_snapshot(f, path);
    const Field r = read_snapshot(path);
    CHECK(r.grid().same_as(g));
    CHECK(r.grid().box_length() == 7.5);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(r[i] == f[i]);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_snapshot(path), IoError);
}

TEST_CASE("fft inverse property") {
    Gen gen(11);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = gen.integer(1, 3);
        const int N = 1 << gen.integer(3, n == 3 ? 4 : 6);
        const GridSpec g = make_grid(n, N, gen.uniform(1.0, 50.0));
        const Field f = gen.white_field(g);
        const Field back = from_spectrum(g, spectrum(f));
        CHECK(rel_l2(back, f) < 1e-14);
        // Parseval: sum |u|^2 = sum |u_hat|^2 / N^n
        double a = 0, b = 0;
        for (auto z : f.values()) a += std::norm(z);
        for (auto z : spectrum(f)) b += std::norm(z);
        CHECK(b / static_cast<double>(f.size()) == doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_CASE("spectral derivative of a resolved mode is exact") {
    const GridSpec g = make_grid(1, 32, 2 * pi);
    const Field f = Field::sample(g, [](std::span<const double> x) { return std::polar(1.0, 3.0 * x[0]); });
    const Field d = derivative(f, 0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(d[i] - cplx(0, 3) * f[i]) < 1e-12);
    const Field l = laplacian(f);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(l[i] + 9.0 * f[i]) < 1e-11);
    // Nyquist mode is dropped by the first derivative
    const Field ny = Field::sample(g, [](std::span<const double> x) { return cplx(std::cos(16.0 * x[0]), 0); });
    CHECK(lp_norm(derivative(ny, 0), 2.0) < 1e-12);
}

TEST_CASE("Lp norms") {
    const double L = 5.0;
    const GridSpec g = make_grid(1, 64, L);
    Field c(g, std::vector<cplx>(64, cplx(2.0, 0)));
    CHECK(lp_norm(c, 2.0) == doctest::Approx(2.0 * std::sqrt(L)).epsilon(1e-14));
    CHECK(lp_norm(c, 3.0) == doctest::Approx(2.0 * std::cbrt(L)).epsilon(1e-14));
    CHECK(sobolev_norm(c, 2.0) == doctest::Approx(lp_norm(c, 2.0)).epsilon(1e-14));
    CHECK(sobolev_norm(c, 4.0) == doctest::Approx(lp_norm(c, 4.0)).epsilon(1e-14));

    const GridSpec gg = make_grid(1, 512, 40.0);
    const Field u = gaussian(gg);
    const double m = std::sqrt(pi), v = std::sqrt(pi) / 2;
    CHECK(lp_norm(u, 2.0) == doctest::Approx(std::pow(pi, 0.25)).epsilon(1e-10));
    CHECK(lp_norm(u, kInf) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sobolev_norm(u, 2.0) == doctest::Approx(std::sqrt(m + v)).epsilon(1e-10));
    CHECK(weighted_l2(u) == doctest::Approx(std::sqrt(v)).epsilon(1e-10));
    CHECK(sigma_norm(u) == doctest::Approx(std::sqrt(m + v) + std::sqrt(v)).epsilon(1e-10));
    CHECK(sigma_norm(Field(gg)) == 0.0);
    CHECK_THROWS_AS(lp_norm(u, 0.5), ValidationError);

    // one mode e^{ikx}: ((1 + k^2) L)^{1/2}
    const GridSpec t = make_grid(1, 64, 2 * pi);
    const Field w = Field::sample(t, [](std::span<const double> x) { return std::polar(1.0, 5.0 * x[0]); });
    CHECK(sobolev_norm(w, 2.0) == doctest::Approx(std::sqrt(26.0 * 2 * pi)).epsilon(1e-12));
}

TEST_CASE("Lp norm properties") {
    Gen gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const GridSpec g = make_grid(1, 64, gen.uniform(2.0, 30.0));
        const Field a = gen.white_field(g), b = gen.white_field(g);
        const double p = gen.uniform(1.0, 8.0);
        CHECK(lp_norm(a + b, p) <= lp_norm(a, p) + lp_norm(b, p) + 1e-12);
        const double s = gen.uniform(-3.0, 3.0);
        CHECK(lp_norm(cplx(s, 0) * a, p) == doctest::Approx(std::abs(s) * lp_norm(a, p)).epsilon(1e-12));
        CHECK(lp_norm(a, kInf) >= lp_norm(a, p) / std::pow(g.box_length(), 1.0 / p) - 1e-12);
    }
}

TEST_CASE("mixed norms") {
    const GridSpec g = make_grid(1, 64, 10.0);
    const Field u = gaussian(g);
    const double nu = lp_norm(u, 2.0);
    std::vector<TimedField> one{{0.0, u}};
    CHECK(mixed_norm(one, {kInf, 2.0, 0}) == doctest::Approx(nu));

    std::vector<TimedField> series;
    const double T = 3.0;
    for (int k = 0; k < 30; ++k) series.push_back({0.1 * k, u});
    CHECK(mixed_norm(series, {2.0, 2.0, 0}, T) == doctest::Approx(nu * std::sqrt(T)).epsilon(1e-12));

    const std::vector<double> times{0.0, 1.0}, norms{1.0, 2.0};
    CHECK(mixed_norm_values(times, norms, 2.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(mixed_norm_values(times, norms, kInf) == 2.0);
    const std::vector<double> bad{1.0, 0.5};
    CHECK_THROWS_AS(mixed_norm_values(bad, norms, 2.0), ValidationError);
}

TEST_CASE("boundary mass and resolution monitors") {
    const GridSpec g = make_grid(1, 256, 40.0);
    CHECK(boundary_mass_fraction(gaussian(g)) < 1e-40);
    const Field wide = gaussian(g, 8.0);
    CHECK(boundary_mass_fraction(wide) > 1e-3);
    CHECK(high_frequency_fraction(gaussian(g)) < 1e-30);
    const GridSpec c = make_grid(1, 16, 40.0);
    CHECK(high_frequency_fraction(gaussian(c, 0.5)) > 1e-3);
}
