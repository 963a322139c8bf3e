#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vortexpair/diagnostics.hpp"
#include "vortexpair/error.hpp"
#include "vortexpair/functionals.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/poisson.hpp"
#include "vortexpair/profile.hpp"
#include "vortexpair/rearrangement.hpp"

namespace vpair {

struct LambdaBracket {
    double low = 0.0;
    double high = 1.0;
};

struct MaximizerConfig {
    Profile profile = Profile::patch_with_circulation(4.0, 1.0);
    double eps = 0.05;
    double i0 = 1.0;
    GridSpec grid{-1.0, 1.0, 2.0, 256, 256};
    int max_iters = 500;
    double energy_tol = 1e-10;
    double impulse_tol = 1e-6;
    LambdaBracket lambda_bracket{};
    /// Exponent for the Lᵖ profile error.
    double p = 3.0;
    bool recenter = true;
    /// Cells on each side of the bathtub cut considered for impulse-correcting swaps.
    int swap_window = 200;
    int max_swaps = 4;

    void validate() const {
        if (!(eps > 0.0) || !(i0 > 0.0)) throw InvalidParameter("maximizer: eps and i0 must be positive");
        if (!(energy_tol > 0.0) || !(impulse_tol > 0.0)) throw InvalidParameter("maximizer: tolerances must be positive");
        if (max_iters < 1) throw InvalidParameter("maximizer: max_iters must be at least 1");
        if (!(lambda_bracket.low >= 0.0) || !(lambda_bracket.high > lambda_bracket.low)) {
            throw InvalidParameter("maximizer: lambda bracket must satisfy 0 <= low < high");
        }
        if (!(p > 2.0)) throw InvalidParameter("maximizer: p must exceed 2");
        if (!grid.is_half_plane()) throw InvalidParameter("maximizer: grid must start at the wall");
    }
};

struct LambdaSolution {
    double lambda = 0.0;
    ScalarField zeta;
    double impulse = 0.0;
    bool met_tolerance = false;
    bool monotone = true;
    int evaluations = 0;
    int swaps = 0;
};

namespace detail {

class ImpulseMap {
public:
    ImpulseMap(const StreamField& psi, const ValueMultiset& m) : psi_(psi), m_(m), w_(psi.values.size()) {
        heights_.resize(psi.values.size());
        for (std::size_t k = 0; k < heights_.size(); ++k) heights_[k] = psi.grid.center(k).x2;
    }

    const std::vector<double>& scores(double lambda) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] = psi_.values[k] - lambda * heights_[k];
        return w_;
    }

    double operator()(double lambda) {
        ++evaluations;
        const std::vector<std::size_t> order = top_cells(scores(lambda), m_.size());
        double s = 0.0;
        for (std::size_t r = 0; r < order.size(); ++r) s += m_.values[r] * heights_[order[r]];
        return s * psi_.grid.cell_area();
    }

    double height(std::size_t k) const { return heights_[k]; }

    int evaluations = 0;

private:
    const StreamField& psi_;
    const ValueMultiset& m_;
    std::vector<double> w_;
    std::vector<double> heights_;
};

// Exchange values between cells near the bathtub cut to pull the impulse onto i0,
// picking the exchange that costs the least of Σζ(ψ − λx₂).
inline int correct_impulse_by_swaps(ScalarField& zeta, const std::vector<double>& W, std::size_t active, double i0,
                                    double tol, int window, int max_swaps) {
    const GridSpec& g = zeta.grid;
    const double area = g.cell_area();
    const std::size_t hi = std::min(W.size(), active + static_cast<std::size_t>(window));
    const std::size_t lo = active > static_cast<std::size_t>(window) ? active - static_cast<std::size_t>(window) : 0;
    std::vector<std::size_t> ranked = top_cells(W, hi);
    std::vector<std::size_t> cand(ranked.begin() + static_cast<std::ptrdiff_t>(lo), ranked.end());
    int swaps = 0;
    double R = impulse(zeta) - i0;
    for (int round = 0; round < max_swaps && std::abs(R) > tol * i0; ++round) {
        double best_cost = std::numeric_limits<double>::infinity();
        double best_miss = std::abs(R);
        std::size_t ba = 0, bb = 0;
        bool found_within = false, found_better = false;
        for (std::size_t x = 0; x < cand.size(); ++x) {
            for (std::size_t y = 0; y < cand.size(); ++y) {
                const std::size_t a = cand[x], b = cand[y];
                const double dz = zeta.values[a] - zeta.values[b];
                if (!(dz > 0.0)) continue;
                const double dI = dz * (g.center(b).x2 - g.center(a).x2) * area;
                const double miss = std::abs(R + dI);
                const double cost = dz * (W[a] - W[b]);
                if (miss <= tol * i0) {
                    if (!found_within || cost < best_cost) {
                        best_cost = cost;
                        ba = a;
                        bb = b;
                        found_within = true;
                    }
                } else if (!found_within && miss < best_miss) {
                    best_miss = miss;
                    ba = a;
                    bb = b;
                    found_better = true;
                }
            }
        }
        if (!found_within && !found_better) break;
        std::swap(zeta.values[ba], zeta.values[bb]);
        ++swaps;
        R = impulse(zeta) - i0;
    }
    return swaps;
}

}  // namespace detail

/// Find λ with I(bathtub(ψ − λx₂)) = i0.
///
/// λ ↦ I is nonincreasing, so the bracket is bisected; the map is piecewise
/// constant on a grid, and the remaining gap at the final jump is closed by a
/// few value exchanges next to the bathtub cut.
inline LambdaSolution solve_lambda(const StreamField& psi, const ValueMultiset& m, double i0, LambdaBracket bracket,
                                   double tol, int swap_window = 200, int max_swaps = 4) {
    if (!(i0 > 0.0) || !(tol > 0.0)) throw InvalidParameter("solve_lambda: i0 and tol must be positive");
    if (!(bracket.low >= 0.0) || !(bracket.high > bracket.low)) {
        throw InvalidParameter("solve_lambda: bracket must satisfy 0 <= low < high");
    }
    detail::ImpulseMap I(psi, m);
    std::vector<std::pair<double, double>> samples;
    auto eval = [&](double lambda) {
        const double v = I(lambda);
        samples.emplace_back(lambda, v);
        return v;
    };

    double lo = bracket.low, hi = bracket.high;
    double flo = eval(lo);
    if (flo < i0 && lo > 0.0) {
        lo = 0.0;
        flo = eval(lo);
    }
    if (flo < i0) throw InfeasibleImpulse("solve_lambda: impulse target exceeds what any lambda >= 0 reaches");
    double fhi = eval(hi);
    for (int k = 0; fhi > i0 && k < 60; ++k) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = eval(hi);
    }
    if (fhi > i0) throw InfeasibleImpulse("solve_lambda: impulse target is below what the bracket cap reaches");

    // bisect down to the crossing itself: many λ may already meet the tolerance
    for (int it = 0; it < 200; ++it) {
        if (flo == fhi || hi - lo <= 1e-14 * std::max(1e-3, hi)) break;
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(mid);
        if (fm >= i0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    LambdaSolution sol;
    std::sort(samples.begin(), samples.end());
    for (std::size_t k = 1; k < samples.size(); ++k) {
        if (samples[k].second > samples[k - 1].second + 1e-12 * i0) sol.monotone = false;
    }
    if (!sol.monotone) {
        // golden-section search on |I(λ) − i0|, keeping the best sample seen
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = bracket.low, b = hi;
        double c = b - phi * (b - a), d = a + phi * (b - a);
        double fc = std::abs(eval(c) - i0), fd = std::abs(eval(d) - i0);
        for (int it = 0; it < 100 && b - a > 1e-15 * std::max(1.0, b); ++it) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = std::abs(eval(c) - i0);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = std::abs(eval(d) - i0);
            }
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : samples) {
            if (std::abs(s.second - i0) < best) {
                best = std::abs(s.second - i0);
                lo = hi = s.first;
                flo = fhi = s.second;
            }
        }
    }

    sol.lambda = std::abs(flo - i0) <= std::abs(fhi - i0) ? lo : hi;
    const std::vector<double> W = I.scores(sol.lambda);
    ScalarField Wf(psi.grid, W);
    sol.zeta = bathtub_rearrange(Wf, m);
    sol.impulse = impulse(sol.zeta);
    if (std::abs(sol.impulse - i0) > tol * i0) {
        sol.swaps = detail::correct_impulse_by_swaps(sol.zeta, W, m.size(), i0, tol, swap_window, max_swaps);
        sol.impulse = impulse(sol.zeta);
    }
    sol.met_tolerance = std::abs(sol.impulse - i0) <= tol * i0;
    sol.evaluations = I.evaluations;
    return sol;
}

struct DiagnosticBundle {
    double t_core = 0.0;
    double t_core_grad = 0.0;
    double pohozaev_lhs = 0.0;
    double pohozaev_residual = 0.0;
    double speed_integral = 0.0;
    double core_diameter = 0.0;
    double profile_error_lp = 0.0;
    double sigma_bound = 0.0;
    double rank_concordance = 0.0;
    Point center;
};

struct IterationRecord {
    double energy = 0.0;
    double impulse = 0.0;
    double lambda = 0.0;
    bool multiset_preserved = false;
    int swaps = 0;
};

struct MaximizerResult {
    ScalarField zeta;
    double lambda = 0.0;
    double mu = 0.0;
    double energy = 0.0;
    double impulse = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string stop_reason;
    DiagnosticBundle diagnostics;
    /// Energies of the accepted iterates, starting with the initial field.
    std::vector<double> energy_trace;
    std::vector<IterationRecord> trace;
    int rejected_steps = 0;
    MaximizerConfig config;
};

/// Lᵖ distance between the rescaled field and ϱ, relative to ‖ϱ‖ₚ, on a unit window of 3r × 3r.
inline double profile_error(const ScalarField& zeta, const Profile& prof, double eps, Point center, double p,
                            int cells = 128) {
    const double L = 1.5 * prof.radius();
    const GridSpec unit(-L, L, L, cells, cells, -L);
    const ScalarField nu = rescale_to_unit(zeta, eps, center, unit);
    const ScalarField ref = place_scaled_profile(prof, 1.0, {0.0, 0.0}, unit);
    return lp_norm(nu - ref, p) / lp_norm(ref, p);
}

inline DiagnosticBundle compute_diagnostics(const ScalarField& zeta, const StreamField& psi, double lambda, double mu,
                                            const MaximizerConfig& cfg) {
    DiagnosticBundle d;
    const ScalarField W = relative_stream(psi, lambda);
    const CoreEnergy ce = core_energy(zeta, W, mu);
    d.t_core = ce.t_form;
    d.t_core_grad = ce.grad_form;
    const PohozaevResult ph = pohozaev_check(zeta, W, mu, lambda, cfg.i0);
    d.pohozaev_lhs = ph.integral_f;
    d.pohozaev_residual = ph.residual;
    d.speed_integral = speed_from_integral(zeta, cfg.profile.kappa());
    d.core_diameter = support_diameter(zeta, 0.0);
    d.center = vorticity_center(zeta);
    d.profile_error_lp = profile_error(zeta, cfg.profile, cfg.eps, d.center, cfg.p);
    d.sigma_bound = W.max_value();
    d.rank_concordance = rank_concordance(zeta, W);
    return d;
}

namespace detail {

inline bool same_support(const ScalarField& a, const ScalarField& b) {
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        if ((a.values[k] > 0.0) != (b.values[k] > 0.0)) return false;
    }
    return true;
}

inline ScalarField recenter_x1(const ScalarField& zeta) {
    const GridSpec& g = zeta.grid;
    const int c = -static_cast<int>(std::lround(vorticity_center(zeta).x1 / g.h1()));
    if (c == 0) return zeta;
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            if (zeta(i, j) != 0.0 && (i + c < 0 || i + c >= g.n1())) return zeta;
        }
    }
    return shift_cells(zeta, c);
}

}  // namespace detail

/// Iterated bathtub ascent for sup{E(v) : v ∈ ℛ(ϱ^ε), I(v) = i0}.
inline MaximizerResult maximize(const MaximizerConfig& cfg) {
    cfg.validate();
    MaximizerResult res;
    res.config = cfg;
    const ScalarField zeta0 = place_at_impulse(cfg.profile, cfg.eps, cfg.i0, cfg.grid);
    const ValueMultiset target = ValueMultiset::from_field(zeta0);
    const auto solver = HalfPlanePoisson::for_grid(cfg.grid);

    ScalarField zeta = zeta0;
    StreamField psi = solver->solve(zeta);
    double energy = kinetic_energy(zeta, psi);
    res.energy_trace.push_back(energy);
    res.trace.push_back({energy, impulse(zeta), 0.0, has_value_multiset(zeta, target), 0});

    double lambda = 0.0;
    LambdaBracket bracket = cfg.lambda_bracket;
    int same_support_run = 0;
    res.stop_reason = "max_iters";
    for (int it = 1; it <= cfg.max_iters; ++it) {
        LambdaSolution sol = solve_lambda(psi, target, cfg.i0, bracket, cfg.impulse_tol, cfg.swap_window, cfg.max_swaps);
        ScalarField next = cfg.recenter ? detail::recenter_x1(sol.zeta) : sol.zeta;
        const StreamField next_psi = solver->solve(next);
        const double next_energy = kinetic_energy(next, next_psi);
        if (next_energy < energy - 1e-12 * std::abs(energy)) {
            ++res.rejected_steps;
            res.converged = true;
            res.stop_reason = "energy_stalled";
            break;
        }
        const bool identical = next.values == zeta.values;
        same_support_run = detail::same_support(next, zeta) ? same_support_run + 1 : 0;
        const double gain = (next_energy - energy) / std::abs(energy);
        zeta = std::move(next);
        psi = next_psi;
        energy = next_energy;
        lambda = sol.lambda;
        res.iterations = it;
        res.energy_trace.push_back(energy);
        res.trace.push_back({energy, impulse(zeta), lambda, has_value_multiset(zeta, target), sol.swaps});
        if (identical) {
            res.converged = true;
            res.stop_reason = "fixed_point";
            break;
        }
        if (gain < cfg.energy_tol) {
            res.converged = true;
            res.stop_reason = "energy_gain";
            break;
        }
        if (same_support_run >= 2) {
            res.converged = true;
            res.stop_reason = "active_set";
            break;
        }
    }

    // multiplier for which the returned field is the bathtub field of its own stream function
    const LambdaSolution last = solve_lambda(psi, target, cfg.i0, bracket, cfg.impulse_tol, cfg.swap_window, cfg.max_swaps);
    res.lambda = last.lambda;
    res.zeta = zeta;
    res.energy = energy;
    res.impulse = impulse(zeta);
    const ScalarField W = relative_stream(psi, res.lambda);
    res.mu = extract_mu(zeta, W);
    res.diagnostics = compute_diagnostics(zeta, psi, res.lambda, res.mu, cfg);
    return res;
}

/// Window [−L, L] × [0, i₀/κ + L] with L = max(0.5, 2.5εr) and `cells_per_radius` cells across εr.
inline GridSpec sweep_grid(const Profile& prof, double eps, double i0, int cells_per_radius = 64) {
    if (!(eps > 0.0) || !(i0 > 0.0) || cells_per_radius < 8) throw InvalidParameter("sweep_grid: invalid arguments");
    const double R = eps * prof.radius();
    const double h = R / cells_per_radius;
    const double L = std::max(0.5, 2.5 * R);
    const double top = i0 / prof.kappa() + L;
    const int n1 = static_cast<int>(std::lround(2.0 * L / h));
    const int n2 = static_cast<int>(std::lround(top / h));
    return GridSpec(-L, -L + n1 * h, n2 * h, n1, n2);
}

struct AsymptoticsRow {
    double eps = 0.0;
    double lambda = 0.0;
    double lambda_limit = 0.0;
    double lambda_error = 0.0;
    double diam_over_eps = 0.0;
    double profile_error = 0.0;
    double center_offset = 0.0;
    double i0_lambda = 0.0;
    double i0_lambda_limit = 0.0;
    bool converged = false;
};

inline std::vector<AsymptoticsRow> asymptotics_report(const std::vector<MaximizerResult>& results) {
    if (results.size() < 2) throw InvalidParameter("asymptotics_report: need at least two runs");
    std::vector<AsymptoticsRow> rows;
    for (const MaximizerResult& r : results) {
        const double kappa = r.config.profile.kappa();
        const double i0 = r.config.i0;
        AsymptoticsRow row;
        row.eps = r.config.eps;
        row.lambda = r.lambda;
        row.lambda_limit = kappa * kappa / (4.0 * kPi * i0);
        row.lambda_error = std::abs(r.lambda - row.lambda_limit);
        row.diam_over_eps = r.diagnostics.core_diameter / r.config.eps;
        row.profile_error = r.diagnostics.profile_error_lp;
        row.center_offset = distance(r.diagnostics.center, {0.0, i0 / kappa});
        row.i0_lambda = i0 * r.lambda;
        row.i0_lambda_limit = kappa * kappa / (4.0 * kPi);
        row.converged = r.converged;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace vpair
