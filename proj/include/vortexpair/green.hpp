#pragma once

#include <cmath>

#include "vortexpair/error.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/quadrature.hpp"

namespace vpair {

/// Half-plane Green function (1/2π)·ln(|x − ȳ| / |x − y|).
inline double green_kernel(Point x, Point y) {
    const double d1 = x.x1 - y.x1;
    const double dm = x.x2 - y.x2, dp = x.x2 + y.x2;
    const double near2 = d1 * d1 + dm * dm;
    if (near2 == 0.0) throw SingularKernel("green_kernel: coincident points");
    return std::log((d1 * d1 + dp * dp) / near2) / (4.0 * kPi);
}

namespace detail {

// ∫∫ ln(x² + y²) dx dy
inline double log_rect_primitive(double x, double y) {
    const double r2 = x * x + y * y;
    if (r2 == 0.0) return 0.0;
    double v = x * y * std::log(r2) - 3.0 * x * y;
    if (x != 0.0) v += x * x * std::atan(y / x);
    if (y != 0.0) v += y * y * std::atan(x / y);
    return v;
}

}  // namespace detail

/// ∫ over [x0,x1]×[y0,y1] of (1/2π)·ln(1/|p − y|) dy, in closed form.
inline double rect_log_potential(Point p, double x0, double x1, double y0, double y1) {
    using detail::log_rect_primitive;
    const double X0 = x0 - p.x1, X1 = x1 - p.x1, Y0 = y0 - p.x2, Y1 = y1 - p.x2;
    const double s = log_rect_primitive(X1, Y1) - log_rect_primitive(X0, Y1) - log_rect_primitive(X1, Y0) +
                     log_rect_primitive(X0, Y0);
    return -s / (4.0 * kPi);
}

/// Free-space potential of a unit-density h1×h2 cell at its own centre.
inline double self_cell_center(double h1, double h2) {
    return rect_log_potential({0.0, 0.0}, -0.5 * h1, 0.5 * h1, -0.5 * h2, 0.5 * h2);
}

/// The same potential averaged over the cell.
inline double self_cell_average(double h1, double h2) {
    static const GaussLegendre rule(16);
    constexpr int kSub = 4;
    const double a = 0.5 * h1, b = 0.5 * h2;
    auto phi = [&](double x, double y) { return rect_log_potential({x, y}, -a, a, -b, b); };
    double s = 0.0;
    for (int u = 0; u < kSub; ++u) {
        for (int v = 0; v < kSub; ++v) {
            s += rule.integrate2d(phi, u * a / kSub, (u + 1) * a / kSub, v * b / kSub, (v + 1) * b / kSub);
        }
    }
    return s / (a * b);
}

}  // namespace vpair
