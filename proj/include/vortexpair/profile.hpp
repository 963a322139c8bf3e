#pragma once

#include <algorithm>
#include <cmath>

#include "vortexpair/error.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/quadrature.hpp"

namespace vpair {

enum class ProfileKind { patch, mollified_bump };

/// Radially symmetric, nonincreasing, compactly supported reference vorticity ϱ.
///
///   patch:           ϱ(x) = h                    for |x| < r
///   mollified_bump:  ϱ(x) = c (1 - |x|²/r²)^γ    for |x| < r
///
/// Both vanish for |x| >= r and are strictly positive inside.
class Profile {
public:
    static Profile patch(double radius, double height) {
        if (!(radius > 0.0) || !(height > 0.0)) throw InvalidParameter("patch profile: radius and height must be positive");
        return Profile(ProfileKind::patch, radius, height, 0.0);
    }

    /// Patch whose height is chosen so that the circulation equals `kappa`.
    static Profile patch_with_circulation(double radius, double kappa) {
        if (!(radius > 0.0) || !(kappa > 0.0)) throw InvalidParameter("patch profile: radius and kappa must be positive");
        return patch(radius, kappa / (kPi * radius * radius));
    }

    static Profile bump(double radius, double exponent, double peak = 1.0) {
        if (!(radius > 0.0) || !(peak > 0.0)) throw InvalidParameter("bump profile: radius and peak must be positive");
        if (!(exponent >= 1.0)) throw InvalidParameter("bump profile: exponent must be >= 1");
        return Profile(ProfileKind::mollified_bump, radius, peak, exponent);
    }

    ProfileKind kind() const noexcept { return kind_; }
    double radius() const noexcept { return radius_; }
    /// Patch height h or bump peak c.
    double peak() const noexcept { return peak_; }
    /// Bump exponent γ (0 for patches).
    double exponent() const noexcept { return exponent_; }
    /// Patch height for patches, bump exponent for bumps.
    double height_or_exponent() const noexcept { return kind_ == ProfileKind::patch ? peak_ : exponent_; }

    /// ∫ϱ, from the closed forms h·πr² and c·πr²/(γ+1).
    double kappa() const noexcept {
        const double area = kPi * radius_ * radius_;
        return kind_ == ProfileKind::patch ? peak_ * area : peak_ * area / (exponent_ + 1.0);
    }

    /// ϱ as a function of ρ = |x|.
    double radial(double rho) const noexcept {
        if (rho >= radius_) return 0.0;
        if (kind_ == ProfileKind::patch) return peak_;
        const double s = 1.0 - (rho * rho) / (radius_ * radius_);
        return peak_ * std::pow(s, exponent_);
    }

    double operator()(Point p) const noexcept { return radial(std::hypot(p.x1, p.x2)); }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    Profile(ProfileKind k, double r, double peak, double gamma) : kind_(k), radius_(r), peak_(peak), exponent_(gamma) {}

    ProfileKind kind_;
    double radius_;
    double peak_;
    double exponent_;
};

inline double eval_profile(const Profile& prof, Point p) { return prof(p); }

/// ϱ^ε(p) = ε⁻² ϱ(p/ε).
inline double scaled_profile(const Profile& prof, double eps, Point p) {
    if (!(eps > 0.0)) throw InvalidParameter("scaled_profile: eps must be positive");
    return prof({p.x1 / eps, p.x2 / eps}) / (eps * eps);
}

namespace detail {

// ∫_{-R}^{x} sqrt(R² - t²) dt for x in [-R, R]
inline double half_disk_primitive(double x, double R) {
    x = std::clamp(x, -R, R);
    const double s = std::sqrt(std::max(0.0, R * R - x * x));
    return 0.5 * (x * s + R * R * std::asin(x / R)) + 0.25 * kPi * R * R;
}

// Area of {|p| < R} ∩ {p1 <= X, p2 <= Y}.
inline double disk_quadrant_area(double X, double Y, double R) {
    if (X <= -R || Y <= -R) return 0.0;
    const double xr = std::min(X, R);
    auto chord = [R](double a, double b) { return half_disk_primitive(b, R) - half_disk_primitive(a, R); };
    if (Y >= R) return 2.0 * chord(-R, xr);
    const double xc = std::sqrt(R * R - Y * Y);
    double area = 0.0;
    // |x| > xc: the chord lies entirely below Y (Y > 0) or entirely above it (Y < 0)
    if (Y > 0.0) {
        if (xr > -R) area += 2.0 * chord(-R, std::min(xr, -xc));
        if (xr > xc) area += 2.0 * chord(xc, xr);
    }
    if (xr > -xc) {
        const double b = std::min(xr, xc);
        area += Y * (b + xc) + chord(-xc, b);
    }
    return area;
}

}  // namespace detail

/// Exact area of the disk of radius R centred at c intersected with [x0,x1] x [y0,y1].
inline double disk_rectangle_area(Point c, double R, double x0, double x1, double y0, double y1) {
    const double X0 = x0 - c.x1, X1 = x1 - c.x1, Y0 = y0 - c.x2, Y1 = y1 - c.x2;
    using detail::disk_quadrant_area;
    const double a = disk_quadrant_area(X1, Y1, R) - disk_quadrant_area(X0, Y1, R) - disk_quadrant_area(X1, Y0, R) +
                     disk_quadrant_area(X0, Y0, R);
    return std::clamp(a, 0.0, (x1 - x0) * (y1 - y0));
}

/// Cell averages of ϱ^ε(· - center) on `grid`.
///
/// Patches use the exact disk/cell overlap, bumps a subdivided Gauss–Legendre
/// rule on every cell that meets the support. Both depend continuously on
/// `center`, which the impulse-matching placement relies on.
inline ScalarField place_scaled_profile(const Profile& prof, double eps, Point center, const GridSpec& grid) {
    if (!(eps > 0.0)) throw InvalidParameter("place_scaled_profile: eps must be positive");
    ScalarField out(grid);
    const double R = eps * prof.radius();
    const double scale = prof.peak() / (eps * eps);
    const double h1 = grid.h1(), h2 = grid.h2();
    const int i_lo = std::max(0, static_cast<int>(std::floor((center.x1 - R - grid.x1_min()) / h1)) - 1);
    const int i_hi = std::min(grid.n1() - 1, static_cast<int>(std::ceil((center.x1 + R - grid.x1_min()) / h1)) + 1);
    const int j_lo = std::max(0, static_cast<int>(std::floor((center.x2 - R - grid.x2_min()) / h2)) - 1);
    const int j_hi = std::min(grid.n2() - 1, static_cast<int>(std::ceil((center.x2 + R - grid.x2_min()) / h2)) + 1);
    static const GaussLegendre rule(4);
    constexpr int kSub = 4;
    for (int j = j_lo; j <= j_hi; ++j) {
        for (int i = i_lo; i <= i_hi; ++i) {
            const double x0 = grid.x1_min() + i * h1, y0 = grid.x2_min() + j * h2;
            const double x1 = x0 + h1, y1 = y0 + h2;
            const double nx = std::clamp(center.x1, x0, x1) - center.x1;
            const double ny = std::clamp(center.x2, y0, y1) - center.x2;
            if (nx * nx + ny * ny >= R * R) continue;
            double avg = 0.0;
            if (prof.kind() == ProfileKind::patch) {
                const double fx = std::max(std::abs(x0 - center.x1), std::abs(x1 - center.x1));
                const double fy = std::max(std::abs(y0 - center.x2), std::abs(y1 - center.x2));
                avg = fx * fx + fy * fy <= R * R ? 1.0 : disk_rectangle_area(center, R, x0, x1, y0, y1) / (h1 * h2);
            } else {
                const double gamma = prof.exponent();
                auto shape = [&](double x, double y) {
                    const double dx = x - center.x1, dy = y - center.x2;
                    const double s = 1.0 - (dx * dx + dy * dy) / (R * R);
                    return s > 0.0 ? std::pow(s, gamma) : 0.0;
                };
                const double sx = h1 / kSub, sy = h2 / kSub;
                for (int a = 0; a < kSub; ++a) {
                    for (int b = 0; b < kSub; ++b) {
                        avg += rule.integrate2d(shape, x0 + a * sx, x0 + (a + 1) * sx, y0 + b * sy, y0 + (b + 1) * sy);
                    }
                }
                avg /= h1 * h2;
            }
            out(i, j) = scale * avg;
        }
    }
    return out;
}

}  // namespace vpair
