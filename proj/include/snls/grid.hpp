#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace snls {

// Uniform periodic grid on [-L/2, L/2)^dim, row-major with the last axis fastest.
class GridSpec {
public:
    GridSpec() = default;

    int dim() const { return dim_; }
    int points() const { return points_; }
    double box_length() const { return box_length_; }
    double dx() const { return box_length_ / points_; }
    double cell_volume() const;
    std::size_t size() const { return size_; }

    // Per-axis tables (identical for every axis).
    const std::vector<double>& coordinates() const { return tables_->x; }
    const std::vector<double>& frequencies() const { return tables_->xi; }

    // |x|^2 and |xi|^2 at every flat index.
    const std::vector<double>& radius_squared() const { return tables_->r2; }
    const std::vector<double>& frequency_squared() const { return tables_->k2; }

    // Axis index of a flat index.
    int axis_index(std::size_t flat, int axis) const;

    // Same dim and points; box lengths equal up to rounding.
    bool same_as(const GridSpec& other) const;

    friend GridSpec make_grid(int dim, int points, double box_length);

private:
    struct Tables {
        std::vector<double> x, xi, r2, k2;
    };

    int dim_ = 0;
    int points_ = 0;
    double box_length_ = 0.0;
    std::size_t size_ = 0;
    std::shared_ptr<const Tables> tables_;
};

GridSpec make_grid(int dim, int points, double box_length);

} // namespace snls
