#include "snls/field.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "snls/errors.hpp"

namespace snls {

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

Field::Field(GridSpec grid) : grid_(std::move(grid)), values_(grid_.size(), cplx{}) {}

Field::Field(GridSpec grid, std::vector<cplx> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ValidationError("field has " + std::to_string(values_.size()) + " values, grid needs " +
                              std::to_string(grid_.size()));
    if (!all_finite()) throw NumericalError("field contains non-finite values");
}

Field Field::sample(const GridSpec& grid, const std::function<cplx(std::span<const double>)>& f) {
    Field out(grid);
    const auto& x = grid.coordinates();
    const int n = grid.dim();
    const int N = grid.points();
    double pt[3] = {0, 0, 0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t rest = i;
        for (int a = n - 1; a >= 0; --a) {
            pt[a] = x[rest % N];
            rest /= N;
        }
        out.values_[i] = f(std::span<const double>(pt, n));
    }
    if (!out.all_finite()) throw NumericalError("sampled field contains non-finite values");
    return out;
}

bool Field::all_finite() const {
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Field& Field::operator+=(const Field& other) {
    if (!grid_.same_as(other.grid_)) throw ValidationError("field grids differ");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    if (!grid_.same_as(other.grid_)) throw ValidationError("field grids differ");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(cplx c) {
    for (auto& v : values_) v *= c;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx c, Field a) { return a *= c; }

cplx inner(const Field& a, const Field& b) {
    if (!a.grid().same_as(b.grid())) throw ValidationError("field grids differ");
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s * a.grid().cell_volume();
}

void write_snapshot(const Field& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open snapshot for writing: " + path);
    const std::int32_t header[3] = {field.grid().dim(), field.grid().points(), 0};
    const double length = field.grid().box_length();
    os.write(reinterpret_cast<const char*>(header), sizeof header);
    os.write(reinterpret_cast<const char*>(&length), sizeof length);
    os.write(reinterpret_cast<const char*>(field.data().data()),
             static_cast<std::streamsize>(field.size() * sizeof(cplx)));
    if (!os) throw IoError("failed writing snapshot: " + path);
}

Field read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open snapshot: " + path);
    std::int32_t header[3];
    double length = 0.0;
    is.read(reinterpret_cast<char*>(header), sizeof header);
    is.read(reinterpret_cast<char*>(&length), sizeof length);
    if (!is) throw IoError("truncated snapshot header: " + path);
    GridSpec grid = make_grid(header[0], header[1], length);
    std::vector<cplx> values(grid.size());
    is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(cplx)));
    if (!is) throw IoError("truncated snapshot data: " + path);
    return Field(grid, std::move(values));
}

} // namespace snls
