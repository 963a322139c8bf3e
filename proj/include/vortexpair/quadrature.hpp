#pragma once

#include <cmath>
#include <vector>

#include "vortexpair/error.hpp"

namespace vpair {

/// Gauss–Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) : nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n)) {
        if (n < 1) throw InvalidParameter("GaussLegendre: need at least one node");
        if (n == 1) {
            nodes[0] = 0.0;
            weights[0] = 2.0;
            return;
        }
        constexpr double pi = 3.14159265358979323846;
        // Legendre P_n and its derivative by the three-term recurrence
        auto legendre = [n](double x, double& dp) {
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            return p1;
        };
        for (int k = 0; k < n / 2; ++k) {
            double x = std::cos(pi * (k + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                const double dx = legendre(x, dp) / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            legendre(x, dp);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[static_cast<std::size_t>(k)] = -x;
            nodes[static_cast<std::size_t>(n - 1 - k)] = x;
            weights[static_cast<std::size_t>(k)] = w;
            weights[static_cast<std::size_t>(n - 1 - k)] = w;
        }
        if (n % 2 == 1) {
            double dp = 0.0;
            legendre(0.0, dp);
            nodes[static_cast<std::size_t>(n / 2)] = 0.0;
            weights[static_cast<std::size_t>(n / 2)] = 2.0 / (dp * dp);
        }
    }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) s += weights[k] * f(mid + half * nodes[k]);
        return s * half;
    }

    /// Tensor-product rule over [x0,x1] x [y0,y1].
    template <class F>
    double integrate2d(F&& f, double x0, double x1, double y0, double y1) const {
        const double mx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
        const double my = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
        double s = 0.0;
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            const double x = mx + hx * nodes[a];
            double row = 0.0;
            for (std::size_t b = 0; b < nodes.size(); ++b) row += weights[b] * f(x, my + hy * nodes[b]);
            s += weights[a] * row;
        }
        return s * hx * hy;
    }
};

}  // namespace vpair
