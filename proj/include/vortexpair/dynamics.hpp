#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "vortexpair/error.hpp"
#include "vortexpair/functionals.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/poisson.hpp"

namespace vpair {

struct LedgerRow {
    double time = 0.0;
    double energy = 0.0;
    double impulse = 0.0;
    double circulation = 0.0;
    double center_x1 = 0.0;
    double center_x2 = 0.0;
    /// NaN when no reference field was supplied.
    double orbit_distance = std::numeric_limits<double>::quiet_NaN();
};

/// Vorticity support came within the exit margin of a lateral window edge.
class WindowExitError : public Error {
public:
    WindowExitError(const std::string& what, double time, std::vector<LedgerRow> ledger)
        : Error(what), time_(time), ledger_(std::move(ledger)) {}

    double exit_time() const noexcept { return time_; }
    const std::vector<LedgerRow>& ledger() const noexcept { return ledger_; }

private:
    double time_;
    std::vector<LedgerRow> ledger_;
};

struct EvolutionState {
    double time = 0.0;
    ScalarField zeta;
    double e0 = 0.0;
    double i0_val = 0.0;
    /// Velocity of the previous step, used to extrapolate to the half step.
    std::optional<VelocityField> previous_velocity;

    static EvolutionState initial(const ScalarField& zeta) {
        if (!zeta.is_nonnegative() || !zeta.all_finite()) {
            throw InvalidParameter("evolution: initial vorticity must be finite and nonnegative");
        }
        EvolutionState s;
        s.zeta = zeta;
        s.e0 = kinetic_energy(zeta);
        s.i0_val = impulse(zeta);
        return s;
    }
};

namespace detail {

// Bilinear sample of a cell-centred velocity component; rows below the wall mirror
// with the given parity, other out-of-window reads clamp to the edge.
inline double sample_velocity(const ScalarField& f, Point p, double parity) {
    const GridSpec& g = f.grid;
    const double s = std::clamp((p.x1 - g.x1_min()) / g.h1() - 0.5, 0.0, g.n1() - 1.0);
    const double t = std::min((p.x2 - g.x2_min()) / g.h2() - 0.5, g.n2() - 1.0);
    const int i0 = std::max(0, std::min(static_cast<int>(std::floor(s)), g.n1() - 2));
    const int j0 = static_cast<int>(std::floor(t));
    const double fs = s - i0;
    const double ft = t - j0;
    auto at = [&](int i, int j) {
        i = std::clamp(i, 0, g.n1() - 1);
        if (j < 0) return parity * f(i, std::min(-1 - j, g.n2() - 1));
        return f(i, std::min(j, g.n2() - 1));
    };
    return (1.0 - ft) * ((1.0 - fs) * at(i0, j0) + fs * at(i0 + 1, j0)) +
           ft * ((1.0 - fs) * at(i0, j0 + 1) + fs * at(i0 + 1, j0 + 1));
}

inline std::array<double, 4> catmull_rom_weights(double t) {
    const double t2 = t * t, t3 = t2 * t;
    return {0.5 * (-t3 + 2.0 * t2 - t), 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0), 0.5 * (-3.0 * t3 + 4.0 * t2 + t),
            0.5 * (t3 - t2)};
}

// Bicubic sample of the odd extension of ζ, limited to the range of the four nearest cells.
inline double sample_vorticity(const ScalarField& z, Point p) {
    const GridSpec& g = z.grid;
    const double s = (p.x1 - g.x1_min()) / g.h1() - 0.5;
    const double t = (p.x2 - g.x2_min()) / g.h2() - 0.5;
    const int i0 = static_cast<int>(std::floor(s));
    const int j0 = static_cast<int>(std::floor(t));
    auto at = [&](int i, int j) {
        if (i < 0 || i >= g.n1() || j >= g.n2()) return 0.0;
        if (j < 0) {
            const int m = -1 - j;
            return m < g.n2() ? -z(i, m) : 0.0;
        }
        return z(i, j);
    };
    const auto wx = catmull_rom_weights(s - i0);
    const auto wy = catmull_rom_weights(t - j0);
    double v = 0.0;
    for (int b = 0; b < 4; ++b) {
        double row = 0.0;
        for (int a = 0; a < 4; ++a) row += wx[static_cast<std::size_t>(a)] * at(i0 - 1 + a, j0 - 1 + b);
        v += wy[static_cast<std::size_t>(b)] * row;
    }
    const double c00 = at(i0, j0), c10 = at(i0 + 1, j0), c01 = at(i0, j0 + 1), c11 = at(i0 + 1, j0 + 1);
    const double lo = std::min({c00, c10, c01, c11}), hi = std::max({c00, c10, c01, c11});
    return std::clamp(v, lo, hi);
}

}  // namespace detail

/// Advective CFL number dt·max|u|/min(h1, h2).
inline double cfl_number(const VelocityField& u, double dt) {
    const GridSpec& g = u.u1.grid;
    return dt * u.max_speed() / std::min(g.h1(), g.h2());
}

/// One semi-Lagrangian step with midpoint back-tracking.
inline EvolutionState step(const EvolutionState& state, double dt) {
    if (!(dt > 0.0)) throw StepSizeError("step: dt must be positive");
    const ScalarField& zeta = state.zeta;
    const GridSpec& g = zeta.grid;
    VelocityField u = velocity(zeta);
    if (cfl_number(u, dt) > 1.0) throw StepSizeError("step: CFL number exceeds 1");
    VelocityField half = u;
    if (state.previous_velocity && state.previous_velocity->u1.grid == g) {
        const VelocityField& prev = *state.previous_velocity;
        for (std::size_t k = 0; k < g.size(); ++k) {
            half.u1.values[k] = 1.5 * u.u1.values[k] - 0.5 * prev.u1.values[k];
            half.u2.values[k] = 1.5 * u.u2.values[k] - 0.5 * prev.u2.values[k];
        }
    }
    EvolutionState next;
    next.zeta = ScalarField(g);
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            const Point x = g.center(i, j);
            const Point mid{x.x1 - 0.5 * dt * half.u1(i, j), x.x2 - 0.5 * dt * half.u2(i, j)};
            const double v1 = detail::sample_velocity(half.u1, mid, 1.0);
            const double v2 = detail::sample_velocity(half.u2, mid, -1.0);
            const Point dep{x.x1 - dt * v1, x.x2 - dt * v2};
            next.zeta(i, j) = std::max(0.0, detail::sample_vorticity(zeta, dep));
        }
    }
    next.time = state.time + dt;
    next.e0 = state.e0;
    next.i0_val = state.i0_val;
    next.previous_velocity = std::move(u);
    return next;
}

/// min over whole-cell horizontal shifts c of ‖ω − ref(· − c h1)‖_𝔛ₚ.
inline double orbit_distance(const ScalarField& omega, const ScalarField& ref, double p = 3.0) {
    if (!(p > 2.0)) throw InvalidParameter("orbit_distance: p must exceed 2");
    if (!(omega.grid == ref.grid)) throw InvalidParameter("orbit_distance: grids differ");
    const int n1 = omega.grid.n1();
    double best = std::numeric_limits<double>::infinity();
    for (int c = -(n1 - 1); c <= n1 - 1; ++c) best = std::min(best, xp_norm(omega - shift_cells(ref, c), p));
    return best;
}

struct EvolveOptions {
    /// Fixed step; 0 selects 0.4·min(h)/max|u| afresh each step.
    double dt = 0.0;
    double cfl_target = 0.4;
    int record_every = 1;
    std::optional<ScalarField> orbit_reference;
    double p = 3.0;
    int exit_margin_cells = 5;
    /// Cells above this fraction of the current maximum count as support for the exit check.
    double exit_threshold = 1e-3;
};

struct EvolutionResult {
    EvolutionState state;
    std::vector<LedgerRow> ledger;
    int steps = 0;
};

inline LedgerRow ledger_row(const EvolutionState& s, const EvolveOptions& opt) {
    LedgerRow row;
    row.time = s.time;
    const StreamField psi = stream_fast(s.zeta);
    row.energy = kinetic_energy(s.zeta, psi);
    row.impulse = impulse(s.zeta);
    row.circulation = mass(s.zeta);
    if (row.circulation > 0.0) {
        const Point c = vorticity_center(s.zeta);
        row.center_x1 = c.x1;
        row.center_x2 = c.x2;
    }
    if (opt.orbit_reference) row.orbit_distance = orbit_distance(s.zeta, *opt.orbit_reference, opt.p);
    return row;
}

namespace detail {

inline bool near_lateral_edge(const ScalarField& z, int margin, double threshold) {
    const GridSpec& g = z.grid;
    const double cut = threshold * z.max_value();
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i < g.n1(); ++i) {
            if ((i < margin || i >= g.n1() - margin) && z(i, j) > cut && z(i, j) > 0.0) return true;
        }
    }
    return false;
}

}  // namespace detail

/// Advance to time T, recording conserved quantities every `record_every` steps and at the end.
inline EvolutionResult evolve(const ScalarField& zeta0, double T, const EvolveOptions& opt = {}) {
    if (!(T >= 0.0)) throw InvalidParameter("evolve: T must be nonnegative");
    if (opt.dt < 0.0 || !(opt.cfl_target > 0.0) || opt.record_every < 1) {
        throw InvalidParameter("evolve: invalid step options");
    }
    EvolutionResult res;
    res.state = EvolutionState::initial(zeta0);
    res.ledger.push_back(ledger_row(res.state, opt));
    const double hmin = std::min(zeta0.grid.h1(), zeta0.grid.h2());
    while (res.state.time < T * (1.0 - 1e-12)) {
        if (detail::near_lateral_edge(res.state.zeta, opt.exit_margin_cells, opt.exit_threshold)) {
            throw WindowExitError("evolve: vorticity reached the lateral window margin", res.state.time,
                                  std::move(res.ledger));
        }
        double dt = opt.dt;
        if (dt == 0.0) {
            const double umax = velocity(res.state.zeta).max_speed();
            dt = umax > 0.0 ? opt.cfl_target * hmin / umax : T - res.state.time;
        }
        dt = std::min(dt, T - res.state.time);
        res.state = step(res.state, dt);
        ++res.steps;
        const bool last = res.state.time >= T * (1.0 - 1e-12);
        if (last || res.steps % opt.record_every == 0) res.ledger.push_back(ledger_row(res.state, opt));
    }
    return res;
}

/// Least-squares slope of center_x1 against time.
inline double center_speed(const std::vector<LedgerRow>& ledger) {
    if (ledger.size() < 2) throw InvalidParameter("center_speed: need at least two ledger rows");
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    const double n = static_cast<double>(ledger.size());
    for (const LedgerRow& r : ledger) {
        st += r.time;
        sx += r.center_x1;
        stt += r.time * r.time;
        stx += r.time * r.center_x1;
    }
    return (n * stx - st * sx) / (n * stt - st * st);
}

struct PointVortexPair {
    double kappa = 1.0;
    Point z{0.0, 1.0};
};

struct PointVortexSample {
    double time = 0.0;
    Point z;
};

/// Classical RK4 for the upper vortex of a point pair, driven by its image −κ at z̄.
inline std::vector<PointVortexSample> point_vortex_evolve(const PointVortexPair& pv, double T, double dt) {
    if (!(dt > 0.0) || !(T >= 0.0)) throw InvalidParameter("point_vortex_evolve: need dt > 0 and T >= 0");
    if (!(pv.kappa > 0.0) || !(pv.z.x2 > 0.0)) throw InvalidParameter("point_vortex_evolve: need kappa > 0 and z2 > 0");
    const double kappa = pv.kappa;
    auto rhs = [kappa](Point z) {
        return Point{kappa / (4.0 * kPi * z.x2), 0.0};
    };
    const long n = std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));
    const double h = T / static_cast<double>(n);
    std::vector<PointVortexSample> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    Point z = pv.z;
    out.push_back({0.0, z});
    for (long k = 0; k < n; ++k) {
        const Point k1 = rhs(z);
        const Point k2 = rhs({z.x1 + 0.5 * h * k1.x1, z.x2 + 0.5 * h * k1.x2});
        const Point k3 = rhs({z.x1 + 0.5 * h * k2.x1, z.x2 + 0.5 * h * k2.x2});
        const Point k4 = rhs({z.x1 + h * k3.x1, z.x2 + h * k3.x2});
        z.x1 += h / 6.0 * (k1.x1 + 2.0 * k2.x1 + 2.0 * k3.x1 + k4.x1);
        z.x2 += h / 6.0 * (k1.x2 + 2.0 * k2.x2 + 2.0 * k3.x2 + k4.x2);
        out.push_back({static_cast<double>(k + 1) * h, z});
    }
    return out;
}

}  // namespace vpair
