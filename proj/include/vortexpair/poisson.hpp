#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "vortexpair/error.hpp"
#include "vortexpair/green.hpp"
#include "vortexpair/grid.hpp"

namespace vpair {

/// O(N²) stream function by direct kernel summation, with the exact self-cell integral.
inline StreamField stream_direct(const ScalarField& zeta) {
    const GridSpec& g = zeta.grid;
    if (!g.is_half_plane()) throw InvalidParameter("stream_direct: grid must start at the wall");
    const double area = g.cell_area();
    const double self = self_cell_center(g.h1(), g.h2());
    std::vector<std::size_t> sources;
    for (std::size_t k = 0; k < zeta.values.size(); ++k) {
        if (zeta.values[k] != 0.0) sources.push_back(k);
    }
    StreamField psi(g);
    for (std::size_t t = 0; t < g.size(); ++t) {
        const Point x = g.center(t);
        double s = 0.0;
        for (std::size_t k : sources) {
            const double z = zeta.values[k];
            if (k == t) {
                s += z * (self + std::log(2.0 * x.x2) / (2.0 * kPi) * area);
            } else {
                s += z * green_kernel(x, g.center(k)) * area;
            }
        }
        psi.values[t] = s;
    }
    return psi;
}

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

inline FftwBuffer<double> fftw_real(std::size_t n) { return FftwBuffer<double>(fftw_alloc_real(n)); }
inline FftwBuffer<fftw_complex> fftw_cplx(std::size_t n) { return FftwBuffer<fftw_complex>(fftw_alloc_complex(n)); }

}  // namespace detail

/// Fast half-plane solver for one grid shape.
///
/// The vorticity is extended oddly across the wall onto n1 × 2n2 cells,
/// zero padded to 2n1 × 4n2 and convolved with the free-space cell kernel.
/// The kernel transform and the FFTW plans are built once per instance.
class HalfPlanePoisson {
public:
    explicit HalfPlanePoisson(const GridSpec& grid) : grid_(grid) {
        if (!grid.is_half_plane()) throw InvalidParameter("HalfPlanePoisson: grid must start at the wall");
        rows_ = 4 * static_cast<std::size_t>(grid.n2());
        cols_ = 2 * static_cast<std::size_t>(grid.n1());
        ccols_ = cols_ / 2 + 1;
        auto real = detail::fftw_real(rows_ * cols_);
        auto spec = detail::fftw_cplx(rows_ * ccols_);
        {
            std::lock_guard lock(detail::fftw_planner_mutex());
            forward_ = fftw_plan_dft_r2c_2d(static_cast<int>(rows_), static_cast<int>(cols_), real.get(), spec.get(),
                                            FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_c2r_2d(static_cast<int>(rows_), static_cast<int>(cols_), spec.get(), real.get(),
                                             FFTW_ESTIMATE);
        }
        if (!forward_ || !backward_) throw Error("HalfPlanePoisson: FFTW planning failed");

        const double h1 = grid.h1(), h2 = grid.h2(), area = grid.cell_area();
        const double self = self_cell_center(h1, h2);
        const long nr = static_cast<long>(rows_), nc = static_cast<long>(cols_);
        for (long r = 0; r < nr; ++r) {
            const long dr = r <= nr / 2 ? r : r - nr;
            for (long c = 0; c < nc; ++c) {
                const long dc = c <= nc / 2 ? c : c - nc;
                double k = self;
                if (dr != 0 || dc != 0) {
                    const double dx = static_cast<double>(dc) * h1, dy = static_cast<double>(dr) * h2;
                    k = -std::log(dx * dx + dy * dy) / (4.0 * kPi) * area;
                }
                real[static_cast<std::size_t>(r) * cols_ + static_cast<std::size_t>(c)] = k;
            }
        }
        fftw_execute_dft_r2c(forward_, real.get(), spec.get());
        const double norm = 1.0 / static_cast<double>(rows_ * cols_);
        kernel_hat_.resize(rows_ * ccols_);
        for (std::size_t k = 0; k < kernel_hat_.size(); ++k) {
            kernel_hat_[k] = std::complex<double>(spec[k][0], spec[k][1]) * norm;
        }
    }

    HalfPlanePoisson(const HalfPlanePoisson&) = delete;
    HalfPlanePoisson& operator=(const HalfPlanePoisson&) = delete;

    ~HalfPlanePoisson() {
        std::lock_guard lock(detail::fftw_planner_mutex());
        if (forward_) fftw_destroy_plan(forward_);
        if (backward_) fftw_destroy_plan(backward_);
    }

    const GridSpec& grid() const noexcept { return grid_; }

    StreamField solve(const ScalarField& zeta) const {
        const GridSpec& g = zeta.grid;
        if (g.n1() != grid_.n1() || g.n2() != grid_.n2() || g.h1() != grid_.h1() || g.h2() != grid_.h2() ||
            !g.is_half_plane()) {
            throw InvalidParameter("HalfPlanePoisson: field grid does not match the solver");
        }
        const std::size_t n1 = static_cast<std::size_t>(grid_.n1()), n2 = static_cast<std::size_t>(grid_.n2());
        auto real = detail::fftw_real(rows_ * cols_);
        auto spec = detail::fftw_cplx(rows_ * ccols_);
        std::fill(real.get(), real.get() + rows_ * cols_, 0.0);
        // extended row k sits at height (k - n2 + 1/2)·h2
        for (std::size_t j = 0; j < n2; ++j) {
            for (std::size_t i = 0; i < n1; ++i) {
                const double z = zeta.values[j * n1 + i];
                real[(n2 + j) * cols_ + i] = z;
                real[(n2 - 1 - j) * cols_ + i] = -z;
            }
        }
        fftw_execute_dft_r2c(forward_, real.get(), spec.get());
        for (std::size_t k = 0; k < rows_ * ccols_; ++k) {
            const std::complex<double> v = std::complex<double>(spec[k][0], spec[k][1]) * kernel_hat_[k];
            spec[k][0] = v.real();
            spec[k][1] = v.imag();
        }
        fftw_execute_dft_c2r(backward_, spec.get(), real.get());
        StreamField psi(g);
        for (std::size_t j = 0; j < n2; ++j) {
            for (std::size_t i = 0; i < n1; ++i) psi.values[j * n1 + i] = real[(n2 + j) * cols_ + i];
        }
        return psi;
    }

    /// Shared solver for grids of this shape and cell size, built on first use.
    static std::shared_ptr<const HalfPlanePoisson> for_grid(const GridSpec& grid) {
        static std::mutex m;
        static std::map<std::tuple<int, int, double, double>, std::shared_ptr<const HalfPlanePoisson>> cache;
        const auto key = std::make_tuple(grid.n1(), grid.n2(), grid.h1(), grid.h2());
        std::lock_guard lock(m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto solver = std::make_shared<const HalfPlanePoisson>(grid);
        cache[key] = solver;
        return solver;
    }

private:
    GridSpec grid_;
    std::size_t rows_ = 0, cols_ = 0, ccols_ = 0;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
    std::vector<std::complex<double>> kernel_hat_;
};

inline StreamField stream_fast(const ScalarField& zeta) { return HalfPlanePoisson::for_grid(zeta.grid)->solve(zeta); }

/// ½Σζψ·A with the self-interaction replaced by its cell average.
///
/// A point value of the self potential at the cell centre overstates the
/// energy of a uniform cell by ½(s_c − s̄)ζ²A per cell; the term depends on
/// the value multiset only.
inline double kinetic_energy(const ScalarField& zeta, const StreamField& psi) {
    const GridSpec& g = zeta.grid;
    double cross = 0.0, square = 0.0;
    for (std::size_t k = 0; k < zeta.values.size(); ++k) {
        const double z = zeta.values[k];
        cross += z * psi.values[k];
        square += z * z;
    }
    const double correction = self_cell_average(g.h1(), g.h2()) - self_cell_center(g.h1(), g.h2());
    return 0.5 * g.cell_area() * (cross + correction * square);
}

inline double kinetic_energy(const ScalarField& zeta) { return kinetic_energy(zeta, stream_fast(zeta)); }

struct VelocityField {
    ScalarField u1;
    ScalarField u2;

    double max_speed() const noexcept {
        double m = 0.0;
        for (std::size_t k = 0; k < u1.values.size(); ++k) m = std::max(m, std::hypot(u1.values[k], u2.values[k]));
        return m;
    }
};

/// u = (∂₂ψ, −∂₁ψ) by second-order differences; the bottom row uses ψ(x₁,−x₂) = −ψ(x₁,x₂).
inline VelocityField velocity_from_stream(const StreamField& psi) {
    const GridSpec& g = psi.grid;
    const int n1 = g.n1(), n2 = g.n2();
    const double h1 = g.h1(), h2 = g.h2();
    VelocityField v{ScalarField(g), ScalarField(g)};
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            double d2 = 0.0;
            if (n2 == 1) {
                d2 = psi(i, 0) / h2;
            } else if (j == 0) {
                d2 = (psi(i, 1) + psi(i, 0)) / (2.0 * h2);
            } else if (j == n2 - 1) {
                d2 = j >= 2 ? (3.0 * psi(i, j) - 4.0 * psi(i, j - 1) + psi(i, j - 2)) / (2.0 * h2)
                            : (psi(i, j) - psi(i, j - 1)) / h2;
            } else {
                d2 = (psi(i, j + 1) - psi(i, j - 1)) / (2.0 * h2);
            }
            double d1 = 0.0;
            if (n1 >= 3) {
                if (i == 0) {
                    d1 = (-3.0 * psi(0, j) + 4.0 * psi(1, j) - psi(2, j)) / (2.0 * h1);
                } else if (i == n1 - 1) {
                    d1 = (3.0 * psi(i, j) - 4.0 * psi(i - 1, j) + psi(i - 2, j)) / (2.0 * h1);
                } else {
                    d1 = (psi(i + 1, j) - psi(i - 1, j)) / (2.0 * h1);
                }
            } else if (n1 == 2) {
                d1 = (psi(1, j) - psi(0, j)) / h1;
            }
            v.u1(i, j) = d2;
            v.u2(i, j) = -d1;
        }
    }
    return v;
}

inline VelocityField velocity(const ScalarField& zeta) { return velocity_from_stream(stream_fast(zeta)); }

}  // namespace vpair
