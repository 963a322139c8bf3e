#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortexpair/vortexpair.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vpair;

namespace {

enum ExitCode { kOk = 0, kTolerance = 1, kConfig = 2, kNumerical = 3 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    double x1_min = -1.0, x1_max = 1.0, x2_max = 2.0;
    int n1 = 256, n2 = 256;

    GridSpec spec() const { return GridSpec(x1_min, x1_max, x2_max, n1, n2); }
};

struct ProfileConfig {
    std::string kind = "patch";
    double radius = 4.0;
    double kappa = 1.0;
    double exponent = 2.0;
    double peak = 0.0;

    Profile make() const {
        if (kind == "patch") return Profile::patch_with_circulation(radius, kappa);
        if (kind == "bump") {
            const double c = peak > 0.0 ? peak : kappa * (exponent + 1.0) / (kPi * radius * radius);
            return Profile::bump(radius, exponent, c);
        }
        throw ConfigError("profile.kind must be \"patch\" or \"bump\"");
    }
};

struct LambConfig {
    GridConfig grid{-6.0, 6.0, 6.0, 256, 256};
    double identity_tol = 0.01;
    double residual_tol = 0.01;
    double speed_tol = 0.05;
};

struct MaximizeConfig {
    ProfileConfig profile;
    double eps = 0.05;
    double i0 = 1.0;
    GridConfig grid;
    int max_iters = 500;
    double energy_tol = 1e-10;
    double impulse_tol = 1e-6;
    double lambda_low = 0.0;
    double lambda_high = 1.0;
    double p = 3.0;
    bool recenter = true;
    int swap_window = 200;
    int max_swaps = 4;

    MaximizerConfig make(std::optional<GridSpec> grid_override = std::nullopt) const {
        MaximizerConfig c;
        c.profile = profile.make();
        c.eps = eps;
        c.i0 = i0;
        c.grid = grid_override ? *grid_override : grid.spec();
        c.max_iters = max_iters;
        c.energy_tol = energy_tol;
        c.impulse_tol = impulse_tol;
        c.lambda_bracket = {lambda_low, lambda_high};
        c.p = p;
        c.recenter = recenter;
        c.swap_window = swap_window;
        c.max_swaps = max_swaps;
        return c;
    }
};

struct SweepConfig {
    std::vector<double> eps{0.2, 0.1, 0.05};
    int cells_per_radius = 64;
    double lambda_tol = 0.15;
    double diam_band = 2.0;
    double center_factor = 10.0;
};

struct EvolveConfig {
    std::string input;
    GridConfig dipole_grid{-6.0, 6.0, 6.0, 256, 128};
    double dipole_shift = -1.0;
    double T = 1.0;
    double dt = 0.0;
    double cfl = 0.4;
    double amp = 0.0;
    int record_every = 10;
    bool orbit = true;
    double p = 3.0;
    double expect_speed = 0.0;
    double speed_tol = 0.05;
    double drift_tol = 0.01;
};

struct PointVortexConfig {
    double kappa = 4.0 * kPi;
    double d = 1.0;
    double T = 1.0;
    double dt = 1e-3;
    double tol = 1e-8;
};

struct RunConfig {
    LambConfig lamb;
    MaximizeConfig maximize;
    SweepConfig sweep;
    EvolveConfig evolve;
    PointVortexConfig point_vortex;
    std::uint64_t seed = 1;
    std::string out = ".";
};

template <class T>
void read_key(const json& j, const char* key, T& v) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(v);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key \"") + key + "\": " + e.what());
    }
}

void read_grid(const json& j, GridConfig& g) {
    read_key(j, "x1_min", g.x1_min);
    read_key(j, "x1_max", g.x1_max);
    read_key(j, "x2_max", g.x2_max);
    read_key(j, "n1", g.n1);
    read_key(j, "n2", g.n2);
}

json grid_json(const GridConfig& g) {
    return {{"x1_min", g.x1_min}, {"x1_max", g.x1_max}, {"x2_max", g.x2_max}, {"n1", g.n1}, {"n2", g.n2}};
}

void load_config(const std::string& path, RunConfig& rc) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    read_key(j, "seed", rc.seed);
    read_key(j, "out", rc.out);
    if (j.contains("lamb_check")) {
        const json& s = j["lamb_check"];
        if (s.contains("grid")) read_grid(s["grid"], rc.lamb.grid);
        read_key(s, "identity_tol", rc.lamb.identity_tol);
        read_key(s, "residual_tol", rc.lamb.residual_tol);
        read_key(s, "speed_tol", rc.lamb.speed_tol);
    }
    if (j.contains("maximize")) {
        const json& s = j["maximize"];
        MaximizeConfig& m = rc.maximize;
        if (s.contains("profile")) {
            const json& p = s["profile"];
            read_key(p, "kind", m.profile.kind);
            read_key(p, "radius", m.profile.radius);
            read_key(p, "kappa", m.profile.kappa);
            read_key(p, "exponent", m.profile.exponent);
            read_key(p, "peak", m.profile.peak);
        }
        if (s.contains("grid")) read_grid(s["grid"], m.grid);
        read_key(s, "eps", m.eps);
        read_key(s, "i0", m.i0);
        read_key(s, "max_iters", m.max_iters);
        read_key(s, "energy_tol", m.energy_tol);
        read_key(s, "impulse_tol", m.impulse_tol);
        read_key(s, "lambda_low", m.lambda_low);
        read_key(s, "lambda_high", m.lambda_high);
        read_key(s, "p", m.p);
        read_key(s, "recenter", m.recenter);
        read_key(s, "swap_window", m.swap_window);
        read_key(s, "max_swaps", m.max_swaps);
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        read_key(s, "eps", rc.sweep.eps);
        read_key(s, "cells_per_radius", rc.sweep.cells_per_radius);
        read_key(s, "lambda_tol", rc.sweep.lambda_tol);
        read_key(s, "diam_band", rc.sweep.diam_band);
        read_key(s, "center_factor", rc.sweep.center_factor);
    }
    if (j.contains("evolve")) {
        const json& s = j["evolve"];
        EvolveConfig& e = rc.evolve;
        read_key(s, "input", e.input);
        if (s.contains("dipole_grid")) read_grid(s["dipole_grid"], e.dipole_grid);
        read_key(s, "dipole_shift", e.dipole_shift);
        read_key(s, "T", e.T);
        read_key(s, "dt", e.dt);
        read_key(s, "cfl", e.cfl);
        read_key(s, "amp", e.amp);
        read_key(s, "record_every", e.record_every);
        read_key(s, "orbit", e.orbit);
        read_key(s, "p", e.p);
        read_key(s, "expect_speed", e.expect_speed);
        read_key(s, "speed_tol", e.speed_tol);
        read_key(s, "drift_tol", e.drift_tol);
    }
    if (j.contains("point_vortex")) {
        const json& s = j["point_vortex"];
        read_key(s, "kappa", rc.point_vortex.kappa);
        read_key(s, "d", rc.point_vortex.d);
        read_key(s, "T", rc.point_vortex.T);
        read_key(s, "dt", rc.point_vortex.dt);
        read_key(s, "tol", rc.point_vortex.tol);
    }
}

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("output directory " + dir + " is not writable");
    return fs::path(dir);
}

void write_json(const fs::path& path, const json& j) { atomic_write(path, j.dump(2) + "\n"); }

json point_json(Point p) { return json::array({p.x1, p.x2}); }

json check(const char* name, double value, double limit, bool pass) {
    return {{"metric", name}, {"value", value}, {"limit", limit}, {"pass", pass}};
}

int finish_checks(const json& checks) {
    int code = kOk;
    for (const json& c : checks) {
        if (!c["pass"].get<bool>()) {
            std::cerr << "tolerance failure: " << c["metric"].get<std::string>() << " = " << c["value"].get<double>()
                      << " (limit " << c["limit"].get<double>() << ")\n";
            code = kTolerance;
        }
    }
    return code;
}

int cmd_lamb_check(const RunConfig& rc) {
    const LambConfig& c = rc.lamb;
    const fs::path out = prepare_out(rc.out);
    const DipoleSpec spec = make_dipole_spec();
    const LambReport rep = lamb_report(spec, c.grid.spec());
    const double ri = rep.impulse / rep.pi_a2;
    const double rl = rep.l2_squared / rep.pi_a2;
    const double speed_err = std::abs(rep.mean_velocity.x1 - spec.speed);
    json checks = json::array();
    checks.push_back(check("impulse_over_pi_a2", ri, c.identity_tol, std::abs(ri - 1.0) <= c.identity_tol));
    checks.push_back(check("l2_squared_over_pi_a2", rl, c.identity_tol, std::abs(rl - 1.0) <= c.identity_tol));
    checks.push_back(check("pde_residual", rep.pde_residual, c.residual_tol, rep.pde_residual < c.residual_tol));
    checks.push_back(check("mean_velocity_error", speed_err, c.speed_tol, speed_err <= c.speed_tol));
    json j{{"a", rep.a},
           {"j1_prime_at_a", spec.j1_prime_at_a},
           {"pi_a2", rep.pi_a2},
           {"impulse", rep.impulse},
           {"l2_squared", rep.l2_squared},
           {"circulation", rep.circulation},
           {"circulation_exact", rep.circulation_exact},
           {"pde_residual", rep.pde_residual},
           {"mean_velocity", point_json(rep.mean_velocity)},
           {"tangency_residual", rep.tangency_residual},
           {"max_speed", rep.max_speed},
           {"grid", grid_json(c.grid)},
           {"checks", checks}};
    write_json(out / "lamb_check.json", j);
    std::cout << std::setprecision(10) << "a = " << rep.a << "  I/(pi a^2) = " << ri << "  L2^2/(pi a^2) = " << rl
              << "  residual = " << rep.pde_residual << "\n";
    return finish_checks(checks);
}

json diagnostics_json(const DiagnosticBundle& d) {
    return {{"t_core", d.t_core},
            {"t_core_grad", d.t_core_grad},
            {"pohozaev_lhs", d.pohozaev_lhs},
            {"pohozaev_residual", d.pohozaev_residual},
            {"speed_integral", d.speed_integral},
            {"core_diameter", d.core_diameter},
            {"profile_error_lp", d.profile_error_lp},
            {"sigma_bound", d.sigma_bound},
            {"rank_concordance", d.rank_concordance},
            {"center", point_json(d.center)}};
}

json result_json(const MaximizerResult& r) {
    json trace = json::array();
    for (const IterationRecord& t : r.trace) {
        trace.push_back({{"energy", t.energy},
                         {"impulse", t.impulse},
                         {"lambda", t.lambda},
                         {"multiset_preserved", t.multiset_preserved},
                         {"swaps", t.swaps}});
    }
    const GridSpec& g = r.config.grid;
    return {{"eps", r.config.eps},
            {"i0", r.config.i0},
            {"kappa", r.config.profile.kappa()},
            {"grid", {{"x1_min", g.x1_min()}, {"x1_max", g.x1_max()}, {"x2_max", g.x2_max()}, {"n1", g.n1()}, {"n2", g.n2()}}},
            {"lambda", r.lambda},
            {"mu", r.mu},
            {"energy", r.energy},
            {"impulse", r.impulse},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"stop_reason", r.stop_reason},
            {"rejected_steps", r.rejected_steps},
            {"pohozaev_residual", r.diagnostics.pohozaev_residual},
            {"speed_integral", r.diagnostics.speed_integral},
            {"diagnostics", diagnostics_json(r.diagnostics)},
            {"energy_trace", r.energy_trace},
            {"trace", trace}};
}

int cmd_maximize(const RunConfig& rc) {
    const fs::path out = prepare_out(rc.out);
    const MaximizerResult r = maximize(rc.maximize.make());
    write_json(out / "maximizer.json", result_json(r));
    write_field(out / "maximizer_field.bin", r.zeta);
    write_field_csv(out / "maximizer_field.csv", r.zeta);
    std::ostringstream ss;
    ss << std::setprecision(17) << "iteration,energy,impulse,lambda\n";
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
        ss << k << ',' << r.trace[k].energy << ',' << r.trace[k].impulse << ',' << r.trace[k].lambda << '\n';
    }
    atomic_write(out / "energy_trace.csv", ss.str());
    std::cout << std::setprecision(10) << "lambda = " << r.lambda << "  mu = " << r.mu << "  E = " << r.energy
              << "  iterations = " << r.iterations << " (" << r.stop_reason << ")\n";
    return r.converged ? kOk : kTolerance;
}

int cmd_sweep_eps(const RunConfig& rc) {
    const SweepConfig& s = rc.sweep;
    if (s.eps.size() < 2) throw ConfigError("sweep needs at least two eps values");
    const fs::path out = prepare_out(rc.out);
    std::vector<std::future<MaximizerResult>> jobs;
    for (double eps : s.eps) {
        MaximizeConfig mc = rc.maximize;
        mc.eps = eps;
        const Profile prof = mc.profile.make();
        const GridSpec grid = sweep_grid(prof, eps, mc.i0, s.cells_per_radius);
        jobs.push_back(std::async(std::launch::async, [mc, grid] { return maximize(mc.make(grid)); }));
    }
    std::vector<MaximizerResult> ok;
    json runs = json::array();
    std::ostringstream csv;
    csv << std::setprecision(17)
        << "eps,lambda,lambda_error,diam_over_eps,profile_error,center_offset,i0_lambda,i0_lambda_limit,status\n";
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        try {
            ok.push_back(jobs[k].get());
            runs.push_back(result_json(ok.back()));
        } catch (const Error& e) {
            runs.push_back({{"eps", s.eps[k]}, {"error", e.what()}});
            csv << s.eps[k] << ",,,,,,,," << "error: " << e.what() << '\n';
        }
    }
    json checks = json::array();
    if (ok.size() >= 2) {
        const std::vector<AsymptoticsRow> rows = asymptotics_report(ok);
        for (const AsymptoticsRow& r : rows) {
            csv << r.eps << ',' << r.lambda << ',' << r.lambda_error << ',' << r.diam_over_eps << ',' << r.profile_error
                << ',' << r.center_offset << ',' << r.i0_lambda << ',' << r.i0_lambda_limit << ','
                << (r.converged ? "converged" : "not_converged") << '\n';
        }
        std::vector<AsymptoticsRow> sorted = rows;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.eps > b.eps; });
        bool lam_mono = true, prof_mono = true, center_ok = true;
        double dmin = sorted.front().diam_over_eps, dmax = dmin;
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            if (k > 0) {
                lam_mono = lam_mono && sorted[k].lambda_error < sorted[k - 1].lambda_error;
                prof_mono = prof_mono && sorted[k].profile_error < sorted[k - 1].profile_error;
            }
            dmin = std::min(dmin, sorted[k].diam_over_eps);
            dmax = std::max(dmax, sorted[k].diam_over_eps);
            center_ok = center_ok && sorted[k].center_offset <= s.center_factor * sorted[k].eps;
        }
        const AsymptoticsRow& fine = sorted.back();
        const double rel = fine.lambda_error / fine.lambda_limit;
        checks.push_back(check("lambda_error_monotone", lam_mono ? 1.0 : 0.0, 1.0, lam_mono));
        checks.push_back(check("lambda_relative_error_smallest_eps", rel, s.lambda_tol, rel < s.lambda_tol));
        checks.push_back(check("diam_over_eps_band", dmax / dmin, s.diam_band, dmax <= s.diam_band * dmin));
        checks.push_back(check("profile_error_monotone", prof_mono ? 1.0 : 0.0, 1.0, prof_mono));
        checks.push_back(check("center_within_factor_eps", center_ok ? 1.0 : 0.0, s.center_factor, center_ok));
    }
    atomic_write(out / "sweep.csv", csv.str());
    write_json(out / "sweep.json", {{"runs", runs}, {"checks", checks}});
    std::cout << csv.str();
    if (ok.size() < s.eps.size()) return kNumerical;
    return finish_checks(checks);
}

int cmd_evolve(const RunConfig& rc) {
    const EvolveConfig& c = rc.evolve;
    const fs::path out = prepare_out(rc.out);
    ScalarField zeta = c.input.empty() ? dipole_field(make_dipole_spec(), c.dipole_grid.spec(), c.dipole_shift)
                                       : read_field(c.input);
    const ScalarField reference = zeta;
    if (c.amp != 0.0) {
        std::mt19937_64 rng(rc.seed);
        std::uniform_real_distribution<double> noise(-1.0, 1.0);
        for (double& v : zeta.values) v *= 1.0 + c.amp * noise(rng);
    }
    EvolveOptions opt;
    opt.dt = c.dt;
    opt.cfl_target = c.cfl;
    opt.record_every = c.record_every;
    opt.p = c.p;
    if (c.orbit) opt.orbit_reference = reference;
    EvolutionResult res;
    try {
        res = evolve(zeta, c.T, opt);
    } catch (const WindowExitError& e) {
        write_ledger_csv(out / "ledger.csv", e.ledger());
        std::cerr << e.what() << " at t = " << e.exit_time() << "\n";
        return kNumerical;
    }
    write_ledger_csv(out / "ledger.csv", res.ledger);
    write_field(out / "final_field.bin", res.state.zeta);
    const LedgerRow& first = res.ledger.front();
    const LedgerRow& last = res.ledger.back();
    const double speed = center_speed(res.ledger);
    const double e_drift = std::abs(last.energy - first.energy) / first.energy;
    const double i_drift = std::abs(last.impulse - first.impulse) / first.impulse;
    double circ_drift = 0.0, orbit_max = 0.0;
    for (const LedgerRow& r : res.ledger) {
        circ_drift = std::max(circ_drift, std::abs(r.circulation - first.circulation) / first.circulation);
        if (c.orbit) orbit_max = std::max(orbit_max, r.orbit_distance);
    }
    json checks = json::array();
    checks.push_back(check("energy_drift", e_drift, c.drift_tol, e_drift < c.drift_tol));
    checks.push_back(check("impulse_drift", i_drift, c.drift_tol, i_drift < c.drift_tol));
    checks.push_back(check("circulation_drift", circ_drift, c.drift_tol, circ_drift < c.drift_tol));
    if (c.expect_speed > 0.0) {
        const double rel = std::abs(speed - c.expect_speed) / c.expect_speed;
        checks.push_back(check("speed_relative_error", rel, c.speed_tol, rel <= c.speed_tol));
    }
    json j{{"T", c.T},
           {"steps", res.steps},
           {"center_speed", speed},
           {"energy_drift", e_drift},
           {"impulse_drift", i_drift},
           {"circulation_drift", circ_drift},
           {"min_vorticity", *std::min_element(res.state.zeta.values.begin(), res.state.zeta.values.end())},
           {"seed", rc.seed},
           {"amp", c.amp},
           {"checks", checks}};
    if (c.orbit) {
        j["orbit_distance_initial"] = first.orbit_distance;
        j["orbit_distance_max"] = orbit_max;
        j["xp_norm_reference"] = xp_norm(reference, c.p);
    }
    write_json(out / "evolve.json", j);
    std::cout << std::setprecision(10) << "steps = " << res.steps << "  speed = " << speed << "  dE = " << e_drift
              << "  dI = " << i_drift << "\n";
    return finish_checks(checks);
}

int cmd_point_vortex(const RunConfig& rc) {
    const PointVortexConfig& c = rc.point_vortex;
    const fs::path out = prepare_out(rc.out);
    const std::vector<PointVortexSample> traj = point_vortex_evolve({c.kappa, {0.0, c.d}}, c.T, c.dt);
    const double b = c.kappa / (4.0 * kPi * c.d);
    double err = 0.0;
    std::ostringstream csv;
    csv << std::setprecision(17) << "time,z1,z2\n";
    for (const PointVortexSample& s : traj) {
        err = std::max(err, std::hypot(s.z.x1 - b * s.time, s.z.x2 - c.d));
        csv << s.time << ',' << s.z.x1 << ',' << s.z.x2 << '\n';
    }
    atomic_write(out / "point_vortex.csv", csv.str());
    json checks = json::array();
    checks.push_back(check("trajectory_error", err, c.tol, err <= c.tol));
    write_json(out / "point_vortex.json",
               {{"speed_exact", b}, {"final", point_json(traj.back().z)}, {"max_error", err}, {"checks", checks}});
    std::cout << std::setprecision(15) << "z(T) = (" << traj.back().z.x1 << ", " << traj.back().z.x2
              << ")  max error = " << err << "\n";
    return finish_checks(checks);
}

template <class T>
void override_with(const std::optional<T>& o, T& target) {
    if (o) target = *o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traveling vortex pairs in the half-plane: maximizers, Lamb dipole checks and dynamics"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Seed for perturbation noise");

    std::optional<int> n1, n2, iters, cells, record_every;
    std::optional<double> eps, i0, radius, kappa, T, dt, cfl, amp, shift, d, x1_min, x1_max, x2_max;
    std::optional<std::string> input, profile_kind;
    std::vector<double> eps_list;

    auto add_grid = [&](CLI::App* sc) {
        sc->add_option("--n1", n1, "Cells along x1");
        sc->add_option("--n2", n2, "Cells along x2");
        sc->add_option("--x1-min", x1_min);
        sc->add_option("--x1-max", x1_max);
        sc->add_option("--x2-max", x2_max);
    };
    auto* lamb = app.add_subcommand("lamb-check", "Lamb dipole identities");
    add_grid(lamb);
    auto* maxi = app.add_subcommand("maximize", "Constrained energy maximization");
    add_grid(maxi);
    for (CLI::App* sc : {maxi, app.add_subcommand("sweep-eps", "Maximizers over a list of eps values")}) {
        sc->add_option("--profile", profile_kind, "patch or bump");
        sc->add_option("--radius", radius, "Profile support radius");
        sc->add_option("--kappa", kappa, "Circulation");
        sc->add_option("--i0", i0, "Impulse target");
        sc->add_option("--max-iters", iters);
    }
    maxi->add_option("--eps", eps);
    auto* sweep = app.get_subcommand("sweep-eps");
    sweep->add_option("--eps", eps_list, "Scale parameters")->expected(2, 64);
    sweep->add_option("--cells-per-radius", cells);
    auto* evo = app.add_subcommand("evolve", "Semi-Lagrangian evolution of a field dump or the Lamb dipole");
    add_grid(evo);
    evo->add_option("--input", input, "Binary field dump; the Lamb dipole is used when absent");
    evo->add_option("--shift", shift, "Initial dipole shift");
    evo->add_option("--time", T, "Final time");
    evo->add_option("--dt", dt, "Fixed time step; 0 picks it from the CFL target");
    evo->add_option("--cfl", cfl);
    evo->add_option("--amp", amp, "Multiplicative noise amplitude");
    evo->add_option("--record-every", record_every);
    auto* pv = app.add_subcommand("point-vortex", "Point-vortex pair trajectory");
    pv->add_option("--kappa", kappa);
    pv->add_option("--height", d, "Height of the upper vortex");
    pv->add_option("--time", T, "Final time");
    pv->add_option("--dt", dt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        RunConfig rc;
        if (!config_path.empty()) load_config(config_path, rc);
        if (!out_dir.empty()) rc.out = out_dir;
        override_with(seed, rc.seed);
        auto grid_overrides = [&](GridConfig& g) {
            override_with(n1, g.n1);
            override_with(n2, g.n2);
            override_with(x1_min, g.x1_min);
            override_with(x1_max, g.x1_max);
            override_with(x2_max, g.x2_max);
        };
        if (*lamb) {
            grid_overrides(rc.lamb.grid);
            return cmd_lamb_check(rc);
        }
        if (*maxi || *sweep) {
            MaximizeConfig& m = rc.maximize;
            grid_overrides(m.grid);
            override_with(profile_kind, m.profile.kind);
            override_with(radius, m.profile.radius);
            override_with(kappa, m.profile.kappa);
            override_with(i0, m.i0);
            override_with(iters, m.max_iters);
            override_with(eps, m.eps);
            if (!eps_list.empty()) rc.sweep.eps = eps_list;
            override_with(cells, rc.sweep.cells_per_radius);
            return *maxi ? cmd_maximize(rc) : cmd_sweep_eps(rc);
        }
        if (*evo) {
            EvolveConfig& e = rc.evolve;
            grid_overrides(e.dipole_grid);
            override_with(input, e.input);
            override_with(shift, e.dipole_shift);
            override_with(T, e.T);
            override_with(dt, e.dt);
            override_with(cfl, e.cfl);
            override_with(amp, e.amp);
            override_with(record_every, e.record_every);
            return cmd_evolve(rc);
        }
        override_with(kappa, rc.point_vortex.kappa);
        override_with(d, rc.point_vortex.d);
        override_with(T, rc.point_vortex.T);
        override_with(dt, rc.point_vortex.dt);
        return cmd_point_vortex(rc);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const ResolutionError& e) {
        std::cerr << "configuration error: " << e.what() << " (or raise eps)\n";
        return kConfig;
    } catch (const InvalidParameter& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const InfeasibleImpulse& e) {
        std::cerr << "numerical failure: " << e.what() << "; widen lambda_high or move i0 inside the window\n";
        return kNumerical;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
}
