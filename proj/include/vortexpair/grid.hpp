#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vortexpair/error.hpp"

namespace vpair {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x1 = 0.0;
    double x2 = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
};

/// Mirror image across the wall x2 = 0.
constexpr Point reflection(Point p) noexcept { return {p.x1, -p.x2}; }

inline double distance(Point a, Point b) noexcept { return std::hypot(a.x1 - b.x1, a.x2 - b.x2); }

/// Uniform cell-centred discretisation of the window [x1_min, x1_max] x [x2_min, x2_max].
///
/// Half-plane fields always use x2_min = 0 so the bottom edge is the wall; a
/// nonzero x2_min is only used for full-plane sampling windows (rescaled profiles).
/// Cells are stored row-major with rows running along x2: index = j * n1 + i.
class GridSpec {
public:
    GridSpec() = default;

    GridSpec(double x1_min, double x1_max, double x2_max, int n1, int n2, double x2_min = 0.0)
        : x1_min_(x1_min), x1_max_(x1_max), x2_min_(x2_min), x2_max_(x2_max), n1_(n1), n2_(n2) {
        if (!(x1_min < x1_max) || !(x2_min < x2_max) || n1 <= 0 || n2 <= 0 ||
            !std::isfinite(x1_min) || !std::isfinite(x1_max) || !std::isfinite(x2_max)) {
            throw InvalidParameter("GridSpec: need x1_min < x1_max, x2_min < x2_max and positive cell counts");
        }
        h1_ = (x1_max - x1_min) / n1;
        h2_ = (x2_max - x2_min) / n2;
    }

    double x1_min() const noexcept { return x1_min_; }
    double x1_max() const noexcept { return x1_max_; }
    double x2_min() const noexcept { return x2_min_; }
    double x2_max() const noexcept { return x2_max_; }
    int n1() const noexcept { return n1_; }
    int n2() const noexcept { return n2_; }
    double h1() const noexcept { return h1_; }
    double h2() const noexcept { return h2_; }
    double cell_area() const noexcept { return h1_ * h2_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_); }
    bool is_half_plane() const noexcept { return x2_min_ == 0.0; }

    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n1_) + static_cast<std::size_t>(i);
    }
    int col(std::size_t k) const noexcept { return static_cast<int>(k % static_cast<std::size_t>(n1_)); }
    int row(std::size_t k) const noexcept { return static_cast<int>(k / static_cast<std::size_t>(n1_)); }

    double x1_center(int i) const noexcept { return x1_min_ + (i + 0.5) * h1_; }
    double x2_center(int j) const noexcept { return x2_min_ + (j + 0.5) * h2_; }
    Point center(int i, int j) const noexcept { return {x1_center(i), x2_center(j)}; }
    Point center(std::size_t k) const noexcept { return center(col(k), row(k)); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    double x1_min_ = -1.0, x1_max_ = 1.0, x2_min_ = 0.0, x2_max_ = 1.0;
    int n1_ = 1, n2_ = 1;
    double h1_ = 2.0, h2_ = 1.0;
};

/// Cell-averaged scalar values on a GridSpec.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
    ScalarField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size()) {
            throw InvalidParameter("ScalarField: value count does not match the grid");
        }
    }

    double& operator()(int i, int j) noexcept { return values[grid.index(i, j)]; }
    double operator()(int i, int j) const noexcept { return values[grid.index(i, j)]; }
    std::span<const double> view() const noexcept { return values; }

    double max_value() const noexcept {
        return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    }
    double min_value() const noexcept {
        return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    }
    double max_abs() const noexcept {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    bool all_finite() const noexcept {
        return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
    }
    bool is_nonnegative() const noexcept {
        return std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0; });
    }
};

/// Point-sample `f` at every cell centre.
template <class F>
ScalarField sample_at_centers(const GridSpec& grid, F&& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.n2(); ++j) {
        for (int i = 0; i < grid.n1(); ++i) {
            out(i, j) = f(grid.center(i, j));
        }
    }
    return out;
}

inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid == b.grid)) throw InvalidParameter("field difference: grids differ");
    ScalarField out(a.grid);
    for (std::size_t k = 0; k < a.values.size(); ++k) out.values[k] = a.values[k] - b.values[k];
    return out;
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid == b.grid)) throw InvalidParameter("field sum: grids differ");
    ScalarField out(a.grid);
    for (std::size_t k = 0; k < a.values.size(); ++k) out.values[k] = a.values[k] + b.values[k];
    return out;
}

/// Stream function 𝒢ζ sampled at cell centres.
struct StreamField : ScalarField {
    using ScalarField::ScalarField;
};

}  // namespace vpair
