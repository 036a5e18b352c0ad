#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "kappa_weyl/error.hpp"

namespace kappa_weyl {

struct Lattice1D {
    double origin = 0.0;
    double step = 1.0;
    std::size_t size = 0;

    double at(std::size_t i) const { return origin + step * static_cast<double>(i); }
    double last() const { return at(size - 1); }
    double lo() const { return origin; }
    double hi() const { return last(); }

    // Odd-sized lattice {k*step : |k| <= half}.
    static Lattice1D centered(double step, std::size_t half) {
        if (!(step > 0)) fail(Errc::InvalidArgument, "lattice step must be positive");
        return {-static_cast<double>(half) * step, step, 2 * half + 1};
    }

    // Smallest centered lattice covering [lo, hi].
    static Lattice1D covering(double lo, double hi, double step) {
        double m = std::max(std::abs(lo), std::abs(hi));
        return centered(step, static_cast<std::size_t>(std::ceil(m / step - 1e-9)));
    }

    // Index of x if x is a lattice node (within tol * step), else -1.
    long node_index(double x, double tol = 1e-9) const {
        double k = (x - origin) / step;
        double r = std::round(k);
        if (std::abs(k - r) > tol || r < 0 || r >= static_cast<double>(size)) return -1;
        return static_cast<long>(r);
    }

    bool same_as(const Lattice1D& o) const {
        return size == o.size && std::abs(step - o.step) <= 1e-12 * step &&
               std::abs(origin - o.origin) <= 1e-9 * step;
    }
};

inline constexpr std::size_t kInterpPoints = 10;

// Equispaced Lagrange stencil of M points in barycentric form.
template <std::size_t M = kInterpPoints>
struct Stencil {
    std::size_t first = 0;
    std::array<double, M> w{};
    bool inside = false;
};

template <std::size_t M = kInterpPoints>
Stencil<M> make_stencil(const Lattice1D& lat, double x) {
    static_assert(M >= 2);
    static const std::array<double, M> bary = [] {
        std::array<double, M> b{};
        double c = 1.0;
        for (std::size_t k = 0; k < M; ++k) {
            b[k] = (k % 2 == 0) ? c : -c;
            c = c * static_cast<double>(M - 1 - k) / static_cast<double>(k + 1);
        }
        return b;
    }();
    Stencil<M> st;
    if (lat.size < M) return st;
    double pos = (x - lat.origin) / lat.step;
    double n_last = static_cast<double>(lat.size - 1);
    if (!(pos >= -1e-12 && pos <= n_last + 1e-12)) return st;
    st.inside = true;
    long base = static_cast<long>(std::floor(pos)) - static_cast<long>(M / 2) + 1;
    base = std::max(0L, std::min(base, static_cast<long>(lat.size - M)));
    st.first = static_cast<std::size_t>(base);
    double total = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        double d = pos - static_cast<double>(st.first + k);
        if (d == 0.0) {
            st.w.fill(0.0);
            st.w[k] = 1.0;
            return st;
        }
        st.w[k] = bary[k] / d;
        total += st.w[k];
    }
    for (auto& v : st.w) v /= total;
    return st;
}

} // namespace kappa_weyl

namespace kappa_weyl {

// Axis-aligned rectangle in a two-variable plane.
struct Box {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;

    bool empty() const { return !(x_hi > x_lo) || !(y_hi > y_lo); }

    Box united(const Box& o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        return {std::min(x_lo, o.x_lo), std::max(x_hi, o.x_hi), std::min(y_lo, o.y_lo),
                std::max(y_hi, o.y_hi)};
    }
};

} // namespace kappa_weyl
