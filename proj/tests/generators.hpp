#pragma once

#include <cstdint>
#include <random>

#include "vortexpair/grid.hpp"

namespace vpair::testing {

struct Gen {
    std::mt19937_64 rng;

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
    Point point(double x1a, double x1b, double x2a, double x2b) { return {uniform(x1a, x1b), uniform(x2a, x2b)}; }

    /// Nonnegative field with roughly `density` of the cells active.
    ScalarField field(const GridSpec& g, double density = 1.0, double scale = 1.0) {
        ScalarField f(g);
        for (double& v : f.values) v = uniform(0.0, 1.0) < density ? scale * uniform(0.0, 1.0) : 0.0;
        return f;
    }

    /// Random signed field, for bilinear-form checks.
    ScalarField signed_field(const GridSpec& g) {
        ScalarField f(g);
        for (double& v : f.values) v = uniform(-1.0, 1.0);
        return f;
    }
};

}  // namespace vpair::testing
