#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "vortexpair/error.hpp"
#include "vortexpair/functionals.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/profile.hpp"

namespace vpair {

/// Positive cell values of a discrete rearrangement class, sorted descending.
struct ValueMultiset {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }

    /// (value, count) pairs in descending value order.
    std::vector<std::pair<double, std::size_t>> grouped() const {
        std::vector<std::pair<double, std::size_t>> out;
        for (double v : values) {
            if (!out.empty() && out.back().first == v) {
                ++out.back().second;
            } else {
                out.emplace_back(v, 1);
            }
        }
        return out;
    }

    static ValueMultiset from_field(const ScalarField& f) {
        ValueMultiset m;
        for (double v : f.values) {
            if (v > 0.0) m.values.push_back(v);
        }
        std::sort(m.values.begin(), m.values.end(), std::greater<>());
        return m;
    }

    friend bool operator==(const ValueMultiset&, const ValueMultiset&) = default;
};

/// True when the positive values of `f` are exactly `m` and everything else is 0.
inline bool has_value_multiset(const ScalarField& f, const ValueMultiset& m) {
    for (double v : f.values) {
        if (v < 0.0) return false;
    }
    return ValueMultiset::from_field(f) == m;
}

/// Grid resolution check shared by the placement routines.
inline void require_resolved(const Profile& prof, double eps, const GridSpec& grid) {
    if (!(eps > 0.0)) throw InvalidParameter("eps must be positive");
    const double h = std::max(grid.h1(), grid.h2());
    const double support = eps * prof.radius();
    if (support < 8.0 * h) {
        const int need = static_cast<int>(std::ceil(8.0 / support));
        throw ResolutionError("scaled profile support eps*r = " + std::to_string(support) +
                                  " is below 8 cell widths; need at least " + std::to_string(need) + " cells per unit",
                              need);
    }
}

/// Cell-averaged ϱ^ε centred at (x1, c) with c chosen so that the discrete impulse is exactly i0.
inline ScalarField place_at_impulse(const Profile& prof, double eps, double i0, const GridSpec& grid, double x1 = 0.0) {
    require_resolved(prof, eps, grid);
    if (!(i0 > 0.0)) throw InvalidParameter("impulse target must be positive");
    const double R = eps * prof.radius();
    const double guess = i0 / prof.kappa();
    const double h = grid.h2();
    double lo = guess - 2.0 * h, hi = guess + 2.0 * h;
    if (lo - R <= 0.0 || hi + R >= grid.x2_max() || x1 - R <= grid.x1_min() || x1 + R >= grid.x1_max()) {
        throw InvalidParameter("scaled profile at the impulse height does not fit inside the window");
    }
    auto imp = [&](double c) { return impulse(place_scaled_profile(prof, eps, {x1, c}, grid)); };
    double flo = imp(lo), fhi = imp(hi);
    if (!(flo <= i0 && i0 <= fhi)) throw InfeasibleImpulse("cannot bracket the placement height for the impulse target");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = imp(mid);
        if (fm < i0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return place_scaled_profile(prof, eps, {x1, std::abs(flo - i0) <= std::abs(fhi - i0) ? lo : hi}, grid);
}

/// Value multiset of the cell-averaged ϱ^ε on `grid`.
inline ValueMultiset sample_target_multiset(const Profile& prof, double eps, double i0, const GridSpec& grid) {
    return ValueMultiset::from_field(place_at_impulse(prof, eps, i0, grid));
}

namespace detail {

struct ByScoreThenIndex {
    const std::vector<double>* w;
    bool operator()(std::size_t a, std::size_t b) const {
        const double wa = (*w)[a], wb = (*w)[b];
        return wa > wb || (wa == wb && a < b);
    }
};

// Indices of the k cells with the largest score, best first.
inline std::vector<std::size_t> top_cells(const std::vector<double>& w, std::size_t k) {
    std::vector<std::size_t> idx(w.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const ByScoreThenIndex cmp{&w};
    k = std::min(k, idx.size());
    if (k < idx.size()) std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), cmp);
    std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), cmp);
    idx.resize(k);
    return idx;
}

}  // namespace detail

/// Largest values on the largest W, ties broken by ascending cell index.
inline ScalarField bathtub_rearrange(const ScalarField& W, const ValueMultiset& m) {
    if (m.size() > W.grid.size()) throw InvalidParameter("bathtub_rearrange: more values than cells");
    ScalarField out(W.grid);
    const std::vector<std::size_t> order = detail::top_cells(W.values, m.size());
    for (std::size_t r = 0; r < order.size(); ++r) out.values[order[r]] = m.values[r];
    return out;
}

}  // namespace vpair
