#pragma once

#include <cmath>

#include "vortexpair/error.hpp"
#include "vortexpair/grid.hpp"

namespace vpair {

namespace detail {

inline double bessel_series(int order, double x) {
    const double q = -0.25 * x * x;
    double term = order == 0 ? 1.0 : 0.5 * x;
    double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= q / (static_cast<double>(m) * static_cast<double>(m + order));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Hankel expansion J_ν(x) ~ sqrt(2/πx)(P cos χ − Q sin χ), χ = x − (ν/2 + 1/4)π.
inline double bessel_asymptotic(int order, double x) {
    const double mu = 4.0 * order * order;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) > last) break;
        last = std::abs(term);
        // a_k/x^k alternates between the Q and P sums with signs +, -, -, +, ...
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            default: p += term; break;
        }
        if (last < 1e-17) break;
    }
    const double chi = x - (0.5 * order + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

/// Bessel function of the first kind, order 0 or 1.
inline double bessel_j(int order, double x) {
    if (order != 0 && order != 1) throw InvalidParameter("bessel_j: only orders 0 and 1 are supported");
    if (!(x >= 0.0)) throw InvalidParameter("bessel_j: argument must be nonnegative");
    return x <= 12.0 ? detail::bessel_series(order, x) : detail::bessel_asymptotic(order, x);
}

/// J₁(s)/s, continuous at 0.
inline double bessel_j1_over_x(double s) {
    if (s < 1e-6) return 0.5 - s * s / 16.0;
    return bessel_j(1, s) / s;
}

/// First positive zero of J₁ by bisection on [3.5, 4].
inline double bessel_j1_first_zero() {
    double lo = 3.5, hi = 4.0;
    double flo = bessel_j(1, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j(1, mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace vpair
