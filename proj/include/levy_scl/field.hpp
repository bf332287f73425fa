#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace levy_scl {

/// Uniform periodic grid on [x_min, x_max).
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_cells);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n_cells() const { return n_cells_; }
    double length() const { return x_max_ - x_min_; }
    double dx() const { return (x_max_ - x_min_) / static_cast<double>(n_cells_); }
    double center(std::size_t i) const { return x_min_ + (static_cast<double>(i) + 0.5) * dx(); }

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_cells_;
};

/// Cell averages of a scalar on a Grid1D.
class Field {
public:
    explicit Field(Grid1D grid, double value = 0.0);
    Field(Grid1D grid, std::vector<double> values);

    static Field sample(const Grid1D& grid, const std::function<double(double)>& f);

    const Grid1D& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double dx() const { return grid_.dx(); }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    /// Periodic access, any integer offset.
    double wrapped(long i) const;

    double min() const;
    double max() const;
    /// sum_i u_i dx
    double mass() const;
    /// Index of the first non-finite value, or size() when all are finite.
    std::size_t first_non_finite() const;

    bool operator==(const Field&) const = default;

private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Throws ContractError when the grids differ.
void require_same_grid(const Field& a, const Field& b, const char* where);

}  // namespace levy_scl
