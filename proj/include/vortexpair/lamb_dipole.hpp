#pragma once

#include <algorithm>
#include <cmath>

#include "vortexpair/bessel.hpp"
#include "vortexpair/functionals.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/poisson.hpp"
#include "vortexpair/quadrature.hpp"

namespace vpair {

struct DipoleSpec {
    double a = 0.0;
    double j1_prime_at_a = 0.0;
    double speed = 1.0;
};

inline DipoleSpec make_dipole_spec() {
    DipoleSpec s;
    s.a = bessel_j1_first_zero();
    // J₁'(x) = J₀(x) − J₁(x)/x and J₁(a) = 0
    s.j1_prime_at_a = bessel_j(0, s.a);
    return s;
}

inline double dipole_stream(const DipoleSpec& spec, Point p) {
    const double r = std::hypot(p.x1, p.x2);
    if (r >= spec.a) return spec.a * spec.a / (r * r) * p.x2;
    return p.x2 - 2.0 * bessel_j1_over_x(r) / spec.j1_prime_at_a * p.x2;
}

inline double dipole_vorticity(const DipoleSpec& spec, Point p) {
    const double r = std::hypot(p.x1, p.x2);
    if (r >= spec.a) return 0.0;
    return std::max(0.0, -2.0 * bessel_j1_over_x(r) * p.x2 / spec.j1_prime_at_a);
}

inline ScalarField dipole_field(const DipoleSpec& spec, const GridSpec& grid, double shift = 0.0) {
    return sample_at_centers(grid, [&](Point p) { return dipole_vorticity(spec, {p.x1 - shift, p.x2}); });
}

/// ∫ζ_c = −(4/J₁'(a))·∫₀ᵃ r J₁(r) dr.
inline double dipole_circulation(const DipoleSpec& spec) {
    static const GaussLegendre rule(40);
    const double radial = rule.integrate([](double r) { return r * bessel_j(1, r); }, 0.0, spec.a);
    return -4.0 / spec.j1_prime_at_a * radial;
}

struct LambReport {
    double a = 0.0;
    double pi_a2 = 0.0;
    double impulse = 0.0;
    double l2_squared = 0.0;
    double circulation = 0.0;
    double circulation_exact = 0.0;
    /// max |−Δₕψ_c − (ψ_c − x₂)⁺| / max ζ_c over cells at least 2h from |x| = a.
    double pde_residual = 0.0;
    /// (1/κ)∫ζu for the computed velocity.
    Point mean_velocity;
    /// max |(u − e₁)·n| / max|u| over the interior band, n the unit normal to level sets of ψ_c − x₂.
    double tangency_residual = 0.0;
    double max_speed = 0.0;
};

/// Sample the dipole on `grid` and evaluate all of its closed-form identities.
inline LambReport lamb_report(const DipoleSpec& spec, const GridSpec& grid) {
    LambReport rep;
    rep.a = spec.a;
    rep.pi_a2 = kPi * spec.a * spec.a;
    const ScalarField zeta = dipole_field(spec, grid);
    rep.impulse = impulse(zeta);
    double sq = 0.0;
    for (double v : zeta.values) sq += v * v;
    rep.l2_squared = sq * grid.cell_area();
    rep.circulation = mass(zeta);
    rep.circulation_exact = dipole_circulation(spec);

    const ScalarField psi = sample_at_centers(grid, [&](Point p) { return dipole_stream(spec, p); });
    const double h1 = grid.h1(), h2 = grid.h2();
    const double hmax = std::max(h1, h2);
    const double zmax = zeta.max_value();
    double res = 0.0;
    for (int j = 1; j + 1 < grid.n2(); ++j) {
        for (int i = 1; i + 1 < grid.n1(); ++i) {
            const Point p = grid.center(i, j);
            if (std::abs(std::hypot(p.x1, p.x2) - spec.a) < 2.0 * hmax) continue;
            const double lap = (psi(i + 1, j) - 2.0 * psi(i, j) + psi(i - 1, j)) / (h1 * h1) +
                               (psi(i, j + 1) - 2.0 * psi(i, j) + psi(i, j - 1)) / (h2 * h2);
            res = std::max(res, std::abs(-lap - std::max(0.0, psi(i, j) - p.x2)));
        }
    }
    rep.pde_residual = zmax > 0.0 ? res / zmax : res;

    const VelocityField u = velocity(zeta);
    rep.max_speed = u.max_speed();
    double m1 = 0.0, m2 = 0.0, m = 0.0;
    for (std::size_t k = 0; k < zeta.values.size(); ++k) {
        m += zeta.values[k];
        m1 += zeta.values[k] * u.u1.values[k];
        m2 += zeta.values[k] * u.u2.values[k];
    }
    if (m > 0.0) rep.mean_velocity = {m1 / m, m2 / m};

    const double step = 1e-6;
    double tang = 0.0;
    for (int j = 0; j < grid.n2(); ++j) {
        for (int i = 0; i < grid.n1(); ++i) {
            const Point p = grid.center(i, j);
            const double r = std::hypot(p.x1, p.x2);
            if (r < 0.3 * spec.a || r > 0.8 * spec.a || p.x2 < 0.2 * spec.a) continue;
            auto phi = [&](double x1, double x2) { return dipole_stream(spec, {x1, x2}) - x2; };
            const double g1 = (phi(p.x1 + step, p.x2) - phi(p.x1 - step, p.x2)) / (2.0 * step);
            const double g2 = (phi(p.x1, p.x2 + step) - phi(p.x1, p.x2 - step)) / (2.0 * step);
            const double gn = std::hypot(g1, g2);
            if (gn < 1e-3) continue;
            const double normal = ((u.u1(i, j) - spec.speed) * g1 + u.u2(i, j) * g2) / gn;
            tang = std::max(tang, std::abs(normal));
        }
    }
    rep.tangency_residual = rep.max_speed > 0.0 ? tang / rep.max_speed : tang;
    return rep;
}

}  // namespace vpair
