#include "snls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "snls/errors.hpp"

namespace snls {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

double GridSpec::cell_volume() const { return std::pow(dx(), dim_); }

int GridSpec::axis_index(std::size_t flat, int axis) const {
    std::size_t stride = 1;
    for (int a = dim_ - 1; a > axis; --a) stride *= static_cast<std::size_t>(points_);
    return static_cast<int>((flat / stride) % static_cast<std::size_t>(points_));
}

bool GridSpec::same_as(const GridSpec& other) const {
    return dim_ == other.dim_ && points_ == other.points_ &&
           std::abs(box_length_ - other.box_length_) <= 1e-12 * box_length_;
}

GridSpec make_grid(int dim, int points, double box_length) {
    if (dim < 1 || dim > 3) throw ValidationError("grid.dim must be 1, 2 or 3, got " + std::to_string(dim));
    if (points < 8 || !is_power_of_two(points))
        throw ValidationError("grid.points must be a power of two >= 8, got " + std::to_string(points));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw ValidationError("grid.box_length must be positive and finite");

    GridSpec g;
    g.dim_ = dim;
    g.points_ = points;
    g.box_length_ = box_length;
    g.size_ = 1;
    for (int a = 0; a < dim; ++a) g.size_ *= static_cast<std::size_t>(points);

    auto t = std::make_shared<GridSpec::Tables>();
    const double dx = box_length / points;
    const double dk = 2.0 * std::numbers::pi / box_length;
    t->x.resize(points);
    t->xi.resize(points);
    for (int j = 0; j < points; ++j) {
        t->x[j] = -0.5 * box_length + j * dx;
        t->xi[j] = dk * (j < points / 2 ? j : j - points);
    }
    t->r2.assign(g.size_, 0.0);
    t->k2.assign(g.size_, 0.0);
    for (std::size_t i = 0; i < g.size_; ++i) {
        std::size_t rest = i;
        double r2 = 0.0, k2 = 0.0;
        for (int a = 0; a < dim; ++a) {
            const int j = static_cast<int>(rest % points);
            rest /= points;
            r2 += t->x[j] * t->x[j];
            k2 += t->xi[j] * t->xi[j];
        }
        t->r2[i] = r2;
        t->k2[i] = k2;
    }
    g.tables_ = std::move(t);
    return g;
}

} // namespace snls
