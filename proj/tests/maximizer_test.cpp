#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "vortexpair/diagnostics.hpp"
#include "vortexpair/maximizer.hpp"

using namespace vpair;
using vpair::testing::Gen;

namespace {

MaximizerConfig small_config(double eps = 0.1) {
    MaximizerConfig cfg;
    cfg.eps = eps;
    cfg.grid = sweep_grid(cfg.profile, eps, cfg.i0, 32);
    return cfg;
}

const MaximizerResult& small_run() {
    static const MaximizerResult r = maximize(small_config());
    return r;
}

const MaximizerResult& reference_run() {
    static const MaximizerResult r = maximize(MaximizerConfig{});
    return r;
}

}  // namespace

TEST(TargetMultiset, PatchIsTwoValuedUpToTheRim) {
    const Profile prof = Profile::patch(4.0, 1.0 / (16.0 * kPi));
    const double eps = 0.05;
    const GridSpec g(-1.0, 1.0, 2.0, 256, 256);
    const ValueMultiset m = sample_target_multiset(prof, eps, 1.0, g);
    const double top = prof.peak() / (eps * eps);
    EXPECT_NEAR(m.values.front(), top, 1e-12 * top);
    const double R = eps * prof.radius();
    const double ring = std::hypot(g.h1(), g.h2());
    const double A = g.cell_area();
    const auto groups = m.grouped();
    EXPECT_GE(static_cast<double>(groups.front().second), kPi * (R - ring) * (R - ring) / A);
    EXPECT_LE(static_cast<double>(m.size()), kPi * (R + ring) * (R + ring) / A);
    for (double v : m.values) EXPECT_LE(v, top * (1.0 + 1e-12));
}

TEST(TargetMultiset, UnitScaleEqualsDirectSampling) {
    const Profile prof = Profile::bump(0.3, 2.0, 1.0);
    const GridSpec g(-1.0, 1.0, 2.0, 64, 64);
    const ScalarField placed = place_at_impulse(prof, 1.0, 0.9 * prof.kappa(), g);
    EXPECT_EQ(sample_target_multiset(prof, 1.0, 0.9 * prof.kappa(), g), ValueMultiset::from_field(placed));
}

TEST(TargetMultiset, BumpTotalMatchesKappa) {
    const Profile prof = Profile::bump(4.0, 2.0, 3.0 / (16.0 * kPi));
    const double eps = 0.05;
    const double h = eps * prof.radius() / 16.0;
    const GridSpec g(-0.5, 0.5, 1.5, static_cast<int>(std::lround(1.0 / h)), static_cast<int>(std::lround(1.5 / h)));
    const ValueMultiset m = sample_target_multiset(prof, eps, 1.0, g);
    double total = 0.0;
    for (double v : m.values) total += v * g.cell_area();
    EXPECT_NEAR(total, prof.kappa(), 0.02 * prof.kappa());
}

TEST(TargetMultiset, PlacementHitsTheImpulseExactly) {
    const MaximizerConfig cfg = small_config();
    const ScalarField z = place_at_impulse(cfg.profile, cfg.eps, cfg.i0, cfg.grid);
    EXPECT_NEAR(impulse(z), cfg.i0, 1e-9);
}

TEST(TargetMultiset, UnresolvedSupportIsRejected) {
    const GridSpec coarse(-1.0, 1.0, 2.0, 40, 40);
    try {
        sample_target_multiset(Profile::patch_with_circulation(4.0, 1.0), 0.05, 1.0, coarse);
        FAIL() << "expected a resolution error";
    } catch (const ResolutionError& e) {
        EXPECT_EQ(e.required_cells_per_unit(), 40);
    }
}

TEST(Bathtub, SmallExample) {
    const GridSpec g(0.0, 3.0, 1.0, 3, 1);
    const ScalarField W(g, {3.0, 1.0, 2.0});
    const ScalarField z = bathtub_rearrange(W, ValueMultiset{{5.0, 4.0}});
    EXPECT_EQ(z.values, (std::vector<double>{5.0, 0.0, 4.0}));
}

TEST(Bathtub, TiesFillAscendingIndices) {
    const GridSpec g(0.0, 4.0, 2.0, 4, 2);
    const ScalarField W(g, std::vector<double>(8, 1.5));
    const ScalarField z = bathtub_rearrange(W, ValueMultiset{{3.0, 2.0, 1.0}});
    EXPECT_EQ(z.values, (std::vector<double>{3.0, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0}));
}

TEST(Bathtub, BeatsRandomPermutations) {
    Gen gen(41);
    const GridSpec g(-1.0, 1.0, 1.0, 16, 8);
    for (int trial = 0; trial < 10; ++trial) {
        const ScalarField W = gen.signed_field(g);
        ValueMultiset m;
        for (int k = 0; k < 40; ++k) m.values.push_back(gen.uniform(0.1, 2.0));
        std::sort(m.values.begin(), m.values.end(), std::greater<>());
        const ScalarField best = bathtub_rearrange(W, m);
        double sbest = 0.0;
        for (std::size_t k = 0; k < W.values.size(); ++k) sbest += best.values[k] * W.values[k];
        EXPECT_TRUE(has_value_multiset(best, m));
        std::vector<double> cells(W.values.size(), 0.0);
        std::copy(m.values.begin(), m.values.end(), cells.begin());
        for (int p = 0; p < 100; ++p) {
            std::shuffle(cells.begin(), cells.end(), gen.rng);
            double s = 0.0;
            for (std::size_t k = 0; k < cells.size(); ++k) s += cells[k] * W.values[k];
            ASSERT_LE(s, sbest + 1e-12);
        }
    }
}

TEST(SolveLambda, ImpulseIsNonincreasingInLambda) {
    Gen gen(42);
    const GridSpec g(-1.0, 1.0, 2.0, 24, 24);
    for (int trial = 0; trial < 100; ++trial) {
        const StreamField psi = stream_fast(gen.field(g, gen.uniform(0.05, 1.0), gen.uniform(0.1, 10.0)));
        ValueMultiset m;
        const int n = gen.integer(1, 60);
        for (int k = 0; k < n; ++k) m.values.push_back(gen.uniform(0.1, 5.0));
        std::sort(m.values.begin(), m.values.end(), std::greater<>());
        detail::ImpulseMap I(psi, m);
        double l1 = gen.uniform(0.0, 2.0), l2 = gen.uniform(0.0, 2.0);
        if (l1 > l2) std::swap(l1, l2);
        ASSERT_GE(I(l1), I(l2) - 1e-12);
    }
}

TEST(SolveLambda, ConvergesWithinBisectionBudget) {
    const MaximizerConfig cfg = small_config();
    const ScalarField z = place_at_impulse(cfg.profile, cfg.eps, cfg.i0, cfg.grid);
    const ValueMultiset m = ValueMultiset::from_field(z);
    const LambdaSolution sol = solve_lambda(stream_fast(z), m, cfg.i0, {}, 1e-10);
    EXPECT_LE(sol.evaluations, 64);
    EXPECT_TRUE(sol.monotone);
    EXPECT_GT(sol.lambda, 0.0);
    EXPECT_TRUE(has_value_multiset(sol.zeta, m));
    EXPECT_NEAR(sol.impulse, cfg.i0, 1e-6);
}

TEST(SolveLambda, ZeroStreamPacksMassAtTheWall) {
    const GridSpec g(-1.0, 1.0, 1.0, 10, 10);
    const StreamField psi(g);
    const ValueMultiset m{{1.0, 1.0, 1.0}};
    detail::ImpulseMap I(psi, m);
    const double bottom = 3.0 * g.cell_area() * 0.5 * g.h2();
    for (double l : {1e-3, 0.1, 1.0, 50.0}) EXPECT_NEAR(I(l), bottom, 1e-15);
    EXPECT_THROW(solve_lambda(psi, m, 2.0 * bottom, {}, 1e-8), InfeasibleImpulse);
    EXPECT_THROW(solve_lambda(psi, m, 0.5 * bottom, {}, 1e-8), InfeasibleImpulse);
}

TEST(Diagnostics, ExtractMuOfSingleCell) {
    const GridSpec g(-1.0, 1.0, 1.0, 4, 4);
    ScalarField z(g), W(g);
    z(2, 1) = 1.0;
    W(2, 1) = 0.37;
    W(0, 0) = -4.0;
    EXPECT_EQ(extract_mu(z, W), 0.37);
    EXPECT_THROW(extract_mu(ScalarField(g), W), DegenerateField);
}

TEST(Diagnostics, CoreEnergyOfZeroField) {
    const GridSpec g(-1.0, 1.0, 1.0, 4, 4);
    const CoreEnergy ce = core_energy(ScalarField(g), ScalarField(g), 0.0);
    EXPECT_EQ(ce.t_form, 0.0);
    EXPECT_EQ(ce.grad_form, 0.0);
}

TEST(Diagnostics, TwoValuedFieldHasTwoPlateaus) {
    Gen gen(43);
    const GridSpec g(-1.0, 1.0, 1.0, 30, 15);
    ScalarField z(g), W(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        W.values[k] = gen.uniform(0.0, 1.0);
        z.values[k] = W.values[k] > 0.6 ? 2.0 : (W.values[k] > 0.2 ? 1.0 : 0.0);
    }
    EXPECT_LE(reconstruct_profile(z, W).plateaus(1e-12), 2u);
    EXPECT_DOUBLE_EQ(rank_concordance(z, W), 1.0);
}

TEST(Diagnostics, PoolAdjacentViolatorsIsMonotone) {
    Gen gen(44);
    const GridSpec g(-1.0, 1.0, 1.0, 20, 10);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField z = gen.field(g, 0.7);
        const ScalarField W = gen.signed_field(g);
        const MonotoneProfile prof = reconstruct_profile(z, W);
        for (std::size_t k = 1; k < prof.f.size(); ++k) {
            ASSERT_LE(prof.w[k - 1], prof.w[k]);
            ASSERT_LE(prof.f[k - 1], prof.f[k] + 1e-12);
        }
    }
}

TEST(Diagnostics, RankConcordanceOfReversedOrder) {
    const GridSpec g(0.0, 4.0, 1.0, 4, 1);
    const ScalarField z(g, {1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(rank_concordance(z, ScalarField(g, {4.0, 3.0, 2.0, 1.0})), -1.0);
    EXPECT_DOUBLE_EQ(rank_concordance(z, ScalarField(g, {0.1, 0.2, 0.3, 0.4})), 1.0);
}

TEST(Diagnostics, PohozaevOfLinearProfile) {
    // ζ = W − μ on a region, so F(s) = (s − μ)²/2 and ∫F = ½Σ(W − μ)²A
    const GridSpec g(-1.0, 1.0, 1.0, 40, 20);
    ScalarField z(g), W(g);
    double expect = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Point p = g.center(k);
        W.values[k] = 1.0 - p.x1 * p.x1 - (p.x2 - 0.5) * (p.x2 - 0.5);
        if (W.values[k] > 0.8) {
            z.values[k] = W.values[k] - 0.8;
            expect += 0.5 * z.values[k] * z.values[k] * g.cell_area();
        }
    }
    const double mu = extract_mu(z, W);
    const PohozaevResult r = pohozaev_check(z, W, mu, 2.0 * expect, 1.0);
    EXPECT_NEAR(r.integral_f, expect, 0.05 * expect);
    EXPECT_LT(r.residual, 0.05);
}

TEST(Diagnostics, SpeedOfSingleCell) {
    const GridSpec g(-1.0, 1.0, 2.0, 20, 20);
    ScalarField z(g);
    const double kappa = 0.7;
    z(10, 12) = kappa / g.cell_area();
    const double d = g.center(10, 12).x2;
    EXPECT_NEAR(speed_from_integral(z, kappa), kappa / (4.0 * kPi * d), 1e-14);
    EXPECT_THROW(speed_from_integral(z, 2.0 * kappa), InconsistentInput);
}

TEST(Diagnostics, SpeedOfTwoCloseCells) {
    const double kappa = 1.0;
    std::vector<double> err;
    for (int n : {40, 160, 640}) {
        const GridSpec g(-1.0, 1.0, 2.0, n, 2);
        ScalarField z(g);
        z(n / 2 - 1, 1) = 0.5 * kappa / g.cell_area();
        z(n / 2, 1) = 0.5 * kappa / g.cell_area();
        const double d = g.center(0, 1).x2;
        err.push_back(std::abs(speed_from_integral(z, kappa) - kappa / (4.0 * kPi * d)));
    }
    EXPECT_LT(err[1], err[0]);
    EXPECT_LT(err[2], err[1]);
    EXPECT_LT(err[2], 1e-5);
}

TEST(Maximize, IterationInvariants) {
    const MaximizerResult& r = small_run();
    const ValueMultiset target = sample_target_multiset(r.config.profile, r.config.eps, r.config.i0, r.config.grid);
    EXPECT_TRUE(has_value_multiset(r.zeta, target));
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
        EXPECT_TRUE(r.trace[k].multiset_preserved);
        EXPECT_LE(std::abs(r.trace[k].impulse - r.config.i0), 1e-6 * r.config.i0);
        if (k > 0) {
            EXPECT_GE(r.trace[k].energy, r.trace[k - 1].energy - 1e-12 * std::abs(r.trace[k - 1].energy));
        }
    }
    EXPECT_GE(r.energy, r.energy_trace.front());
}

TEST(Maximize, ConvergedCriticalPoint) {
    const MaximizerResult& r = small_run();
    EXPECT_TRUE(r.converged);
    EXPECT_GT(r.lambda, 0.0);
    EXPECT_GE(r.diagnostics.rank_concordance, 0.95);
    const Point xhat{0.0, r.config.i0 / r.config.profile.kappa()};
    const double reach = 10.0 * r.config.eps * r.config.profile.radius();
    for (std::size_t k = 0; k < r.zeta.values.size(); ++k) {
        if (r.zeta.values[k] > 0.0) {
            ASSERT_LT(distance(r.zeta.grid.center(k), xhat), reach);
        }
    }
}

TEST(Maximize, SupportBoundaryFollowsTheLevelSet) {
    const MaximizerResult& r = small_run();
    const StreamField psi = stream_fast(r.zeta);
    const ScalarField W = relative_stream(psi, r.lambda);
    const GridSpec& g = W.grid;
    double slope = 0.0;
    for (int j = 0; j < g.n2(); ++j) {
        for (int i = 0; i + 1 < g.n1(); ++i) slope = std::max(slope, std::abs(W(i + 1, j) - W(i, j)));
    }
    for (int j = 1; j + 1 < g.n2(); ++j) {
        for (int i = 1; i + 1 < g.n1(); ++i) {
            if (r.zeta(i, j) > 0.0) continue;
            const bool adjacent = r.zeta(i + 1, j) > 0.0 || r.zeta(i - 1, j) > 0.0 || r.zeta(i, j + 1) > 0.0 ||
                                  r.zeta(i, j - 1) > 0.0;
            if (adjacent) {
                ASSERT_LE(W(i, j), r.mu + 2.0 * slope);
            }
        }
    }
    EXPECT_GE(r.mu, -1e-3 * W.max_value());
}

TEST(Maximize, ReferenceRun) {
    const MaximizerResult& r = reference_run();
    EXPECT_TRUE(r.converged);
    const double limit = 1.0 / (4.0 * kPi);
    EXPECT_NEAR(r.lambda, limit, 0.15 * limit);
    EXPECT_GE(r.mu, -1e-3 * r.diagnostics.sigma_bound);
}

TEST(Maximize, IdentityResidualsAtReference) {
    const MaximizerResult& r = reference_run();
    const DiagnosticBundle& d = r.diagnostics;
    EXPECT_LT(std::abs(d.t_core - d.t_core_grad) / d.t_core, 5e-2);
    EXPECT_LT(d.pohozaev_residual, 0.1);
    EXPECT_LE(d.pohozaev_lhs, 2.0 * d.t_core * (1.0 + 1e-2));
    EXPECT_LT(std::abs(d.speed_integral - r.lambda) / r.lambda, 0.1);
}

TEST(Maximize, PatchProfileKeepsItsTopPlateau) {
    const MaximizerResult& r = small_run();
    const ScalarField W = relative_stream(stream_fast(r.zeta), r.lambda);
    const MonotoneProfile prof = reconstruct_profile(r.zeta, W);
    const double top = r.zeta.max_value();
    std::size_t at_top = 0, fitted_top = 0;
    for (double v : r.zeta.values) at_top += v == top;
    for (double f : prof.f) fitted_top += std::abs(f - top) <= 1e-12 * top;
    EXPECT_GE(static_cast<double>(fitted_top), 0.95 * static_cast<double>(at_top));
}

TEST(Maximize, Deterministic) {
    const MaximizerResult a = maximize(small_config(0.2));
    const MaximizerResult b = maximize(small_config(0.2));
    EXPECT_EQ(a.zeta.values, b.zeta.values);
    EXPECT_EQ(a.lambda, b.lambda);
    EXPECT_EQ(a.energy_trace, b.energy_trace);
}

TEST(Maximize, RejectsInvalidConfigs) {
    MaximizerConfig cfg = small_config();
    cfg.eps = -1.0;
    EXPECT_THROW(maximize(cfg), InvalidParameter);
    cfg = small_config();
    cfg.p = 2.0;
    EXPECT_THROW(maximize(cfg), InvalidParameter);
    cfg = small_config();
    cfg.lambda_bracket = {1.0, 0.5};
    EXPECT_THROW(maximize(cfg), InvalidParameter);
    cfg = small_config();
    cfg.grid = GridSpec(-1.0, 1.0, 2.0, 16, 16);
    EXPECT_THROW(maximize(cfg), ResolutionError);
}

TEST(Asymptotics, NeedsTwoRuns) {
    EXPECT_THROW(asymptotics_report({small_run()}), InvalidParameter);
    const std::vector<AsymptoticsRow> rows = asymptotics_report({small_run(), small_run()});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(rows[0].i0_lambda_limit, 1.0 / (4.0 * kPi), 1e-15);
    EXPECT_EQ(rows[0].lambda_error, std::abs(small_run().lambda - 1.0 / (4.0 * kPi)));
}
