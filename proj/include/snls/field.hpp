#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "snls/grid.hpp"

namespace snls {

using cplx = std::complex<double>;

// Complex samples on a GridSpec.
class Field {
public:
    Field() = default;
    explicit Field(GridSpec grid);
    Field(GridSpec grid, std::vector<cplx> values);

    // f receives the coordinate vector (length dim) of each point.
    static Field sample(const GridSpec& grid, const std::function<cplx(std::span<const double>)>& f);

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }
    std::vector<cplx>& data() { return values_; }
    const std::vector<cplx>& data() const { return values_; }

    const cplx& operator[](std::size_t i) const { return values_[i]; }
    cplx& operator[](std::size_t i) { return values_[i]; }

    bool all_finite() const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(cplx c);

private:
    GridSpec grid_;
    std::vector<cplx> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx c, Field a);

// Plain L2 inner product <a, b> = sum a conj(b) dx^n.
cplx inner(const Field& a, const Field& b);

// Binary snapshot: int32 dim, int32 points, int32 reserved, float64 box_length,
// then interleaved (re, im) float64 pairs, all little-endian.
void write_snapshot(const Field& field, const std::string& path);
Field read_snapshot(const std::string& path);

} // namespace snls
