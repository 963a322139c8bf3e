#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "vortexpair/error.hpp"
#include "vortexpair/functionals.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/poisson.hpp"

namespace vpair {

/// W = ψ − λx₂.
inline ScalarField relative_stream(const StreamField& psi, double lambda) {
    ScalarField W(psi.grid);
    for (std::size_t k = 0; k < W.values.size(); ++k) W.values[k] = psi.values[k] - lambda * psi.grid.center(k).x2;
    return W;
}

/// min W over the active cells.
inline double extract_mu(const ScalarField& zeta, const ScalarField& W) {
    double mu = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < zeta.values.size(); ++k) {
        if (zeta.values[k] > 0.0) {
            mu = any ? std::min(mu, W.values[k]) : W.values[k];
            any = true;
        }
    }
    if (!any) throw DegenerateField("extract_mu: field has no active cells");
    return mu;
}

struct CoreEnergy {
    double t_form = 0.0;
    double grad_form = 0.0;
};

/// ½∫ζ(W−μ)⁺ and ½∫|∇(W−μ)⁺|², the latter from differences across cell faces.
inline CoreEnergy core_energy(const ScalarField& zeta, const ScalarField& W, double mu) {
    const GridSpec& g = zeta.grid;
    const double area = g.cell_area();
    CoreEnergy ce;
    std::vector<double> phi(W.values.size());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        phi[k] = std::max(0.0, W.values[k] - mu);
        if (zeta.values[k] > 0.0) ce.t_form += zeta.values[k] * phi[k];
    }
    ce.t_form *= 0.5 * area;
    double s = 0.0;
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            const double p = phi[g.index(i, j)];
            if (i + 1 < g.n1()) {
                const double d = (phi[g.index(i + 1, j)] - p) / g.h1();
                s += d * d;
            }
            if (j + 1 < g.n2()) {
                const double d = (phi[g.index(i, j + 1)] - p) / g.h2();
                s += d * d;
            }
        }
    }
    ce.grad_form = 0.5 * s * area;
    return ce;
}

/// Nondecreasing step function fitted to (W, ζ) on the active cells.
struct MonotoneProfile {
    std::vector<double> w;
    std::vector<double> f;

    /// Number of distinct plateau levels after pooling.
    std::size_t plateaus(double tie_tol) const {
        std::size_t n = 0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            if (k == 0 || f[k] - f[k - 1] > tie_tol) ++n;
        }
        return n;
    }
};

/// Pool-adjacent-violators fit of ζ as a nondecreasing function of W over active cells.
inline MonotoneProfile reconstruct_profile(const ScalarField& zeta, const ScalarField& W) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < zeta.values.size(); ++k) {
        if (zeta.values[k] > 0.0) pts.emplace_back(W.values[k], zeta.values[k]);
    }
    std::sort(pts.begin(), pts.end());
    struct Block {
        double sum;
        std::size_t count;
    };
    std::vector<Block> blocks;
    for (const auto& pt : pts) {
        blocks.push_back({pt.second, 1});
        while (blocks.size() >= 2) {
            const Block& b = blocks.back();
            const Block& a = blocks[blocks.size() - 2];
            if (a.sum / static_cast<double>(a.count) <= b.sum / static_cast<double>(b.count)) break;
            const Block merged{a.sum + b.sum, a.count + b.count};
            blocks.pop_back();
            blocks.back() = merged;
        }
    }
    MonotoneProfile prof;
    prof.w.reserve(pts.size());
    prof.f.reserve(pts.size());
    std::size_t k = 0;
    for (const Block& b : blocks) {
        const double level = b.sum / static_cast<double>(b.count);
        for (std::size_t c = 0; c < b.count; ++c, ++k) {
            prof.w.push_back(pts[k].first);
            prof.f.push_back(level);
        }
    }
    return prof;
}

struct PohozaevResult {
    double integral_f = 0.0;
    double target = 0.0;
    double residual = 0.0;
};

/// Compare ∫F(W) with λi₀/2, F the trapezoid primitive of the fitted profile from μ.
inline PohozaevResult pohozaev_check(const ScalarField& zeta, const ScalarField& W, double mu, double lambda,
                                     double i0) {
    const MonotoneProfile prof = reconstruct_profile(zeta, W);
    PohozaevResult out;
    out.target = 0.5 * lambda * i0;
    if (prof.w.empty()) throw DegenerateField("pohozaev_check: field has no active cells");
    std::vector<double> knots{mu};
    std::vector<double> level{prof.f.front()};
    for (std::size_t k = 0; k < prof.w.size(); ++k) {
        if (prof.w[k] <= knots.back()) {
            level.back() = std::max(level.back(), prof.f[k]);
            continue;
        }
        knots.push_back(prof.w[k]);
        level.push_back(prof.f[k]);
    }
    std::vector<double> prim(knots.size(), 0.0);
    for (std::size_t k = 1; k < knots.size(); ++k) {
        prim[k] = prim[k - 1] + 0.5 * (level[k] + level[k - 1]) * (knots[k] - knots[k - 1]);
    }
    auto F = [&](double s) {
        if (s <= mu) return 0.0;
        if (s >= knots.back()) return prim.back() + level.back() * (s - knots.back());
        const auto it = std::upper_bound(knots.begin(), knots.end(), s);
        const std::size_t k = static_cast<std::size_t>(it - knots.begin()) - 1;
        const double t = s - knots[k];
        const double slope = (level[k + 1] - level[k]) / (knots[k + 1] - knots[k]);
        return prim[k] + level[k] * t + 0.5 * slope * t * t;
    };
    double s = 0.0;
    for (double w : W.values) s += F(w);
    out.integral_f = s * W.grid.cell_area();
    out.residual = out.target > 0.0 ? std::abs(out.integral_f - out.target) / out.target : 0.0;
    return out;
}

/// (1/2πκ) ΣΣ (x₂ᵢ + x₂ⱼ)/|xᵢ − x̄ⱼ|² ζᵢζⱼ A² over active cells.
inline double speed_from_integral(const ScalarField& zeta, double kappa) {
    const double m = mass(zeta);
    if (!(kappa > 0.0) || std::abs(m - kappa) > 0.02 * kappa) {
        throw InconsistentInput("speed_from_integral: field circulation does not match kappa");
    }
    const GridSpec& g = zeta.grid;
    std::vector<Point> pos;
    std::vector<double> val;
    for (std::size_t k = 0; k < zeta.values.size(); ++k) {
        if (zeta.values[k] > 0.0) {
            pos.push_back(g.center(k));
            val.push_back(zeta.values[k]);
        }
    }
    double s = 0.0;
    for (std::size_t a = 0; a < pos.size(); ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < pos.size(); ++b) {
            const double d1 = pos[a].x1 - pos[b].x1;
            const double sum2 = pos[a].x2 + pos[b].x2;
            row += sum2 / (d1 * d1 + sum2 * sum2) * val[b];
        }
        s += row * val[a];
    }
    const double area = g.cell_area();
    return s * area * area / (2.0 * kPi * kappa);
}

/// Kendall rank concordance between ζ and W over the active cells.
///
/// Pairs tied in either variable are left out, so a step profile that is a
/// nondecreasing function of W scores 1.
inline double rank_concordance(const ScalarField& zeta, const ScalarField& W) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < zeta.values.size(); ++k) {
        if (zeta.values[k] > 0.0) pts.emplace_back(zeta.values[k], W.values[k]);
    }
    double concordant = 0.0, discordant = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const double dx = pts[a].first - pts[b].first;
            const double dy = pts[a].second - pts[b].second;
            if (dx == 0.0 || dy == 0.0) continue;
            if ((dx > 0.0) == (dy > 0.0)) {
                concordant += 1.0;
            } else {
                discordant += 1.0;
            }
        }
    }
    const double n = concordant + discordant;
    return n > 0.0 ? (concordant - discordant) / n : 1.0;
}

}  // namespace vpair
