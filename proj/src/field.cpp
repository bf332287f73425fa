#include "levy_scl/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levy_scl/errors.hpp"

namespace levy_scl {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_cells) : x_min_(x_min), x_max_(x_max), n_cells_(n_cells) {
    if (n_cells == 0) throw ArgumentError("Grid1D: n_cells must be positive");
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw ArgumentError("Grid1D: need finite x_min < x_max");
}

Field::Field(Grid1D grid, double value) : grid_(grid), values_(grid.n_cells(), value) {}

Field::Field(Grid1D grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n_cells()) throw ContractError("Field: value count does not match the grid");
}

Field Field::sample(const Grid1D& grid, const std::function<double(double)>& f) {
    Field out(grid);
    for (std::size_t i = 0; i < grid.n_cells(); ++i) out[i] = f(grid.center(i));
    return out;
}

double Field::wrapped(long i) const {
    const long n = static_cast<long>(values_.size());
    long k = i % n;
    if (k < 0) k += n;
    return values_[static_cast<std::size_t>(k)];
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Field::mass() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * dx();
}

std::size_t Field::first_non_finite() const {
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i])) return i;
    return values_.size();
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
    if (!(a.grid() == b.grid())) throw ContractError(std::string(where) + ": fields live on different grids");
}

}  // namespace levy_scl
