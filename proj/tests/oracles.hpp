#pragma once

#include <cmath>
#include <functional>

#include "vortexpair/grid.hpp"
#include "vortexpair/quadrature.hpp"

namespace vpair::testing {

// Adaptive tensor Gauss–Legendre on a rectangle, refined toward the origin where ln|d| is singular.
inline double integrate_near_origin(const std::function<double(double, double)>& f, double x0, double x1, double y0,
                                    double y1, int depth) {
    static const GaussLegendre rule(8);
    const bool touches = x0 <= 0.0 && 0.0 <= x1 && y0 <= 0.0 && 0.0 <= y1;
    if (!touches || depth == 0) return rule.integrate2d(f, x0, x1, y0, y1);
    const double xm = x0 < 0.0 && x1 > 0.0 ? 0.0 : 0.5 * (x0 + x1);
    const double ym = y0 < 0.0 && y1 > 0.0 ? 0.0 : 0.5 * (y0 + y1);
    return integrate_near_origin(f, x0, xm, y0, ym, depth - 1) + integrate_near_origin(f, xm, x1, y0, ym, depth - 1) +
           integrate_near_origin(f, x0, xm, ym, y1, depth - 1) + integrate_near_origin(f, xm, x1, ym, y1, depth - 1);
}

// ∫_cell∫_cell' ln|x − y| for two h1×h2 cells whose centres differ by (D1, D2), written as a 2D
// integral of ln|d| against the product of triangle weights.
inline double cell_pair_log(double D1, double D2, double h1, double h2) {
    auto w = [&](double d1, double d2) {
        const double r2 = d1 * d1 + d2 * d2;
        if (r2 == 0.0) return 0.0;
        return 0.5 * std::log(r2) * (h1 - std::abs(d1 - D1)) * (h2 - std::abs(d2 - D2));
    };
    double s = 0.0;
    for (double xa : {D1 - h1, D1}) {
        for (double ya : {D2 - h2, D2}) s += integrate_near_origin(w, xa, xa + h1, ya, ya + h2, 14);
    }
    return s;
}

/// ½∫∫ζ(x)G(x,y)ζ(y) for the piecewise-constant field, each cell pair integrated in 4D.
inline double energy_oracle(const ScalarField& f) {
    const GridSpec& g = f.grid;
    double e = 0.0;
    for (std::size_t a = 0; a < g.size(); ++a) {
        if (f.values[a] == 0.0) continue;
        for (std::size_t b = 0; b < g.size(); ++b) {
            if (f.values[b] == 0.0) continue;
            const Point x = g.center(a), y = g.center(b);
            const double image = cell_pair_log(x.x1 - y.x1, x.x2 + y.x2, g.h1(), g.h2());
            const double direct = cell_pair_log(x.x1 - y.x1, x.x2 - y.x2, g.h1(), g.h2());
            e += f.values[a] * f.values[b] * (image - direct);
        }
    }
    return e * 0.5 / (2.0 * kPi);
}

}  // namespace vpair::testing
