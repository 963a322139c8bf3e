#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "vortexpair/bessel.hpp"
#include "vortexpair/functionals.hpp"
#include "vortexpair/lamb_dipole.hpp"

using namespace vpair;
using vpair::testing::Gen;

TEST(Bessel, ValuesAtZero) {
    EXPECT_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_EQ(bessel_j(1, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(bessel_j1_over_x(0.0), 0.5);
    EXPECT_NEAR(bessel_j1_over_x(1e-8), 0.5, 1e-15);
}

TEST(Bessel, AgreesWithStandardLibrary) {
    Gen gen(31);
    for (int k = 0; k < 5000; ++k) {
        const double x = gen.uniform(0.0, 40.0);
        for (int n : {0, 1}) {
            ASSERT_NEAR(bessel_j(n, x), std::cyl_bessel_j(static_cast<double>(n), x), 2e-12) << "order " << n << " x " << x;
        }
    }
}

TEST(Bessel, FirstZeroOfJ1) {
    const double a = bessel_j1_first_zero();
    EXPECT_GT(a, 3.8);
    EXPECT_LT(a, 3.9);
    EXPECT_NEAR(a, 3.8317059702, 1e-8);
    EXPECT_LT(std::abs(bessel_j(1, a)), 1e-12);
    EXPECT_LT(std::abs(std::cyl_bessel_j(1.0, a)), 1e-12);
}

TEST(DipoleSpec, DerivativeAtTheZero) {
    const DipoleSpec s = make_dipole_spec();
    EXPECT_LT(s.j1_prime_at_a, 0.0);
    const double h = 1e-5;
    const double fd = (std::cyl_bessel_j(1.0, s.a + h) - std::cyl_bessel_j(1.0, s.a - h)) / (2.0 * h);
    EXPECT_NEAR(s.j1_prime_at_a, fd, 1e-9);
}

TEST(DipoleStream, VanishesOnTheAxis) {
    const DipoleSpec s = make_dipole_spec();
    for (double x1 : {-7.0, -2.0, 0.0, 0.5, 3.0, 10.0}) EXPECT_EQ(dipole_stream(s, {x1, 0.0}), 0.0);
}

TEST(DipoleStream, ContinuousAcrossTheCircle) {
    const DipoleSpec s = make_dipole_spec();
    Gen gen(32);
    for (int k = 0; k < 200; ++k) {
        const double th = gen.uniform(0.0, kPi);
        const Point in{(s.a - 1e-9) * std::cos(th), (s.a - 1e-9) * std::sin(th)};
        const Point out{(s.a + 1e-9) * std::cos(th), (s.a + 1e-9) * std::sin(th)};
        EXPECT_NEAR(dipole_stream(s, in), dipole_stream(s, out), 1e-8);
        EXPECT_NEAR(dipole_stream(s, out), out.x2, 1e-8);
    }
}

TEST(DipoleVorticity, SupportedOnTheHalfDiskAndNonnegative) {
    const DipoleSpec s = make_dipole_spec();
    Gen gen(33);
    for (int k = 0; k < 20000; ++k) {
        const Point p = gen.point(-6.0, 6.0, 0.0, 6.0);
        const double w = dipole_vorticity(s, p);
        ASSERT_GE(w, 0.0);
        if (std::hypot(p.x1, p.x2) >= s.a) {
            ASSERT_EQ(w, 0.0);
        } else if (p.x2 > 1e-6 && std::hypot(p.x1, p.x2) < s.a * (1.0 - 1e-6)) {
            ASSERT_GT(w, 0.0);
        }
    }
}

TEST(DipoleVorticity, ClosedFormIdentitiesOnTheReferenceGrid) {
    const DipoleSpec s = make_dipole_spec();
    const LambReport rep = lamb_report(s, GridSpec(-6.0, 6.0, 6.0, 256, 256));
    EXPECT_NEAR(rep.pi_a2, 46.1244, 1e-3);
    EXPECT_NEAR(rep.impulse / rep.pi_a2, 1.0, 1e-2);
    EXPECT_NEAR(rep.l2_squared / rep.pi_a2, 1.0, 1e-2);
    const double ratio = rep.impulse / rep.l2_squared;
    EXPECT_GE(ratio, 0.99);
    EXPECT_LE(ratio, 1.01);
    EXPECT_LT(rep.pde_residual, 1e-2);
    EXPECT_NEAR(rep.circulation, rep.circulation_exact, 1e-2 * rep.circulation_exact);
}

TEST(DipoleVorticity, SteadyTravel) {
    const DipoleSpec s = make_dipole_spec();
    const LambReport rep = lamb_report(s, GridSpec(-6.0, 6.0, 6.0, 256, 256));
    EXPECT_NEAR(rep.mean_velocity.x1, s.speed, 0.03 * s.speed);
    EXPECT_NEAR(rep.mean_velocity.x2, 0.0, 0.03 * rep.max_speed);
    EXPECT_LT(rep.tangency_residual, 5e-2);
}

TEST(DipoleField, ShiftInvariants) {
    const DipoleSpec s = make_dipole_spec();
    const GridSpec g(-8.0, 8.0, 6.0, 320, 120);
    const ScalarField f0 = dipole_field(s, g, 0.0);
    const ScalarField f2 = dipole_field(s, g, 2.0);
    EXPECT_NEAR(mass(f0), mass(f2), 1e-12 * mass(f0));
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (f0.values[k] > 0.0) {
            ASSERT_LT(std::hypot(g.center(k).x1, g.center(k).x2), s.a);
        }
    }
    for (double beta : {-1.3, 0.0, 0.7, 2.0}) {
        EXPECT_NEAR(vorticity_center(dipole_field(s, g, beta)).x1, beta, g.h1());
    }
}

TEST(DipoleField, CoarseGridDegradesGracefully) {
    const DipoleSpec s = make_dipole_spec();
    const LambReport coarse = lamb_report(s, GridSpec(-6.0, 6.0, 6.0, 64, 64));
    const LambReport fine = lamb_report(s, GridSpec(-6.0, 6.0, 6.0, 256, 256));
    EXPECT_GT(std::abs(coarse.impulse / coarse.pi_a2 - 1.0), std::abs(fine.impulse / fine.pi_a2 - 1.0));
    EXPECT_GT(coarse.pde_residual, fine.pde_residual);
}
