#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "vortexpair/error.hpp"
#include "vortexpair/grid.hpp"

namespace vpair {

inline double mass(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.cell_area();
}

inline double impulse(const ScalarField& f) {
    const GridSpec& g = f.grid;
    double s = 0.0;
    for (int j = 0; j < g.n2(); ++j) {
        double row = 0.0;
        for (int i = 0; i < g.n1(); ++i) row += f(i, j);
        s += g.x2_center(j) * row;
    }
    return s * g.cell_area();
}

inline double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw InvalidParameter("lp_norm: p must be >= 1");
    double s = 0.0;
    if (p == 1.0) {
        for (double v : f.values) s += std::abs(v);
        return s * f.grid.cell_area();
    }
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid.cell_area(), 1.0 / p);
}

/// |I(f)| + ‖f‖₁ + ‖f‖ₚ.
inline double xp_norm(const ScalarField& f, double p = 3.0) {
    if (!(p > 2.0)) throw InvalidParameter("xp_norm: p must exceed 2");
    return std::abs(impulse(f)) + lp_norm(f, 1.0) + lp_norm(f, p);
}

inline Point vorticity_center(const ScalarField& f) {
    const GridSpec& g = f.grid;
    double m = 0.0, m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            const double v = f(i, j);
            m += v;
            m1 += v * g.x1_center(i);
            m2 += v * g.x2_center(j);
        }
    }
    if (!(m > 0.0)) throw DegenerateField("vorticity_center: field has no positive mass");
    return {m1 / m, m2 / m};
}

namespace detail {

inline double cross(Point o, Point a, Point b) {
    return (a.x1 - o.x1) * (b.x2 - o.x2) - (a.x2 - o.x2) * (b.x1 - o.x1);
}

// Andrew's monotone chain; returns hull vertices counter-clockwise.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace detail

/// Largest distance between two cell centres whose value exceeds `threshold`.
inline double support_diameter(const ScalarField& f, double threshold = 0.0) {
    if (!(threshold >= 0.0)) throw InvalidParameter("support_diameter: threshold must be >= 0");
    std::vector<Point> pts;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        if (f.values[k] > threshold) pts.push_back(f.grid.center(k));
    }
    if (pts.size() < 2) return 0.0;
    const std::vector<Point> hull = detail::convex_hull(std::move(pts));
    double d = 0.0;
    for (std::size_t a = 0; a < hull.size(); ++a) {
        for (std::size_t b = a + 1; b < hull.size(); ++b) d = std::max(d, distance(hull[a], hull[b]));
    }
    return d;
}

/// Bilinear interpolation through cell centres; cells outside the window count as 0.
inline double sample_bilinear(const ScalarField& f, Point p) {
    const GridSpec& g = f.grid;
    const double s = (p.x1 - g.x1_min()) / g.h1() - 0.5;
    const double t = (p.x2 - g.x2_min()) / g.h2() - 0.5;
    if (!(s > -1.0 && t > -1.0 && s < g.n1() && t < g.n2())) return 0.0;
    const int i0 = static_cast<int>(std::floor(s));
    const int j0 = static_cast<int>(std::floor(t));
    const double fs = s - i0, ft = t - j0;
    auto at = [&](int i, int j) {
        return (i < 0 || j < 0 || i >= g.n1() || j >= g.n2()) ? 0.0 : f(i, j);
    };
    return (1.0 - ft) * ((1.0 - fs) * at(i0, j0) + fs * at(i0 + 1, j0)) +
           ft * ((1.0 - fs) * at(i0, j0 + 1) + fs * at(i0 + 1, j0 + 1));
}

/// ν(x) = ε²·f(εx + center) resampled onto `out_grid`.
inline ScalarField rescale_to_unit(const ScalarField& f, double eps, Point center, const GridSpec& out_grid) {
    if (!(eps > 0.0)) throw InvalidParameter("rescale_to_unit: eps must be positive");
    return sample_at_centers(out_grid, [&](Point x) {
        return eps * eps * sample_bilinear(f, {eps * x.x1 + center.x1, eps * x.x2 + center.x2});
    });
}

/// Translate by `c` whole cells along x1; mass pushed past the window is dropped.
inline ScalarField shift_cells(const ScalarField& f, int c) {
    const GridSpec& g = f.grid;
    ScalarField out(g);
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            const int src = i - c;
            if (src >= 0 && src < g.n1()) out(i, j) = f(src, j);
        }
    }
    return out;
}

/// Copy `f` into a larger window with the same cell sizes and aligned cell edges.
inline ScalarField embed(const ScalarField& f, const GridSpec& target) {
    const GridSpec& g = f.grid;
    const double tol = 1e-9;
    const double off1 = (g.x1_min() - target.x1_min()) / target.h1();
    const double off2 = (g.x2_min() - target.x2_min()) / target.h2();
    if (std::abs(g.h1() - target.h1()) > tol * g.h1() || std::abs(g.h2() - target.h2()) > tol * g.h2() ||
        std::abs(off1 - std::round(off1)) > 1e-6 || std::abs(off2 - std::round(off2)) > 1e-6) {
        throw InvalidParameter("embed: target grid is not aligned with the source grid");
    }
    const int di = static_cast<int>(std::lround(off1));
    const int dj = static_cast<int>(std::lround(off2));
    ScalarField out(target);
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            const double v = f(i, j);
            if (v == 0.0) continue;
            const int ti = i + di, tj = j + dj;
            if (ti < 0 || tj < 0 || ti >= target.n1() || tj >= target.n2()) {
                throw InvalidParameter("embed: source support falls outside the target window");
            }
            out(ti, tj) = v;
        }
    }
    return out;
}

}  // namespace vpair
