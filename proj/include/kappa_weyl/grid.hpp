#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/fft.hpp"
#include "kappa_weyl/special.hpp"

namespace kappa_weyl {

struct GridSpec {
    std::size_t n_points = 1024;
    double s_min = -12.0;
    double s_max = 12.0;

    double step() const { return (s_max - s_min) / static_cast<double>(n_points); }
    double point(std::size_t i) const { return s_min + step() * static_cast<double>(i); }
    double length() const { return s_max - s_min; }

    static GridSpec make(std::size_t n, double s_min, double s_max) {
        if (!is_power_of_two(n) || n < 8)
            fail(Errc::BadShape, "n_points must be a power of two >= 8, got " + std::to_string(n));
        if (!(s_min < 0.0 && 0.0 < s_max))
            fail(Errc::InvalidArgument, "grid must straddle s = 0");
        return {n, s_min, s_max};
    }

    bool operator==(const GridSpec&) const = default;
};

inline GridSpec default_grid() { return GridSpec::make(1024, -12.0, 12.0); }

struct StateVector {
    GridSpec grid;
    std::vector<cplx> values;

    std::size_t size() const { return values.size(); }
};

// ---- generator catalog -----------------------------------------------------

struct GaussianGen {
    double center = 0.0;
    double width = 1.0;
    double momentum = 0.0;
};

// Smooth mollifier e^{-1/(1-y^2)} supported on [lo, hi].
struct BumpGen {
    double lo = -1.0;
    double hi = 1.0;
};

struct HermiteGen {
    int order = 0;
    double center = 0.0;
    double width = 1.0;
};

using Generator = std::variant<GaussianGen, BumpGen, HermiteGen>;

inline double bump_profile(double s, double lo, double hi) {
    double y = (2.0 * s - lo - hi) / (hi - lo);
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - y * y));
}

// Normalized Hermite function of the given order at y.
inline double hermite_function(int order, double y) {
    double p0 = std::pow(pi, -0.25) * std::exp(-0.5 * y * y);
    if (order == 0) return p0;
    double p1 = std::sqrt(2.0) * y * p0;
    for (int n = 1; n < order; ++n) {
        double p2 = std::sqrt(2.0 / (n + 1)) * y * p1 - std::sqrt(static_cast<double>(n) / (n + 1)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

inline cplx sample_generator(const Generator& gen, double s) {
    return std::visit(
        [s](const auto& g) -> cplx {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, GaussianGen>) {
                double y = (s - g.center) / g.width;
                return std::exp(-0.5 * y * y) * std::polar(1.0, g.momentum * s);
            } else if constexpr (std::is_same_v<G, BumpGen>) {
                return bump_profile(s, g.lo, g.hi);
            } else {
                return hermite_function(g.order, (s - g.center) / g.width);
            }
        },
        gen);
}

inline double l2_norm(const StateVector& x) {
    double acc = 0.0;
    for (const auto& v : x.values) acc += std::norm(v);
    return std::sqrt(acc * x.grid.step());
}

// Largest |value| among the outer 5% of points at either end.
inline double edge_magnitude(const StateVector& x) {
    std::size_t n = x.size();
    std::size_t m = std::max<std::size_t>(1, (n + 19) / 20);
    double e = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        e = std::max(e, std::abs(x.values[i]));
        e = std::max(e, std::abs(x.values[n - 1 - i]));
    }
    return e;
}

inline void check_edge(const StateVector& x, double edge_tol) {
    double e = edge_magnitude(x);
    if (e > edge_tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "edge amplitude %.3g exceeds %.3g", e, edge_tol);
        fail(Errc::EdgeLeak, buf);
    }
}

// Largest |DFT| among the highest 5% of frequencies, relative to the spectral peak.
inline double spectral_edge_ratio(const StateVector& x) {
    std::vector<cplx> spec = x.values;
    dft_inplace(spec, -1);
    std::size_t n = spec.size();
    double peak = 0.0;
    for (auto v : spec) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    std::size_t m = std::max<std::size_t>(1, n / 40);
    double e = 0.0;
    for (std::size_t k = n / 2 - m; k <= n / 2 + m && k < n; ++k) e = std::max(e, std::abs(spec[k]));
    return e / peak;
}

inline StateVector normalized(StateVector x) {
    double nrm = l2_norm(x);
    if (!std::isfinite(nrm) || nrm < 1e-150) fail(Errc::NonNormalizable, "state norm underflows");
    for (auto& v : x.values) v /= nrm;
    return x;
}

inline StateVector make_state(const GridSpec& grid, const Generator& gen, double edge_tol = 1e-10) {
    StateVector x{grid, std::vector<cplx>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i) x.values[i] = sample_generator(gen, grid.point(i));
    x = normalized(std::move(x));
    check_edge(x, edge_tol);
    return x;
}

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) fail(Errc::GridMismatch, "states live on different grids");
}

inline cplx inner(const StateVector& a, const StateVector& b) {
    require_same_grid(a.grid, b.grid);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a.values[i]) * b.values[i];
    return acc * a.grid.step();
}

// Angular frequency of DFT bin k on an n-point grid of spacing h.
inline double dft_frequency(std::size_t k, std::size_t n, double h) {
    long kk = static_cast<long>(k);
    if (k >= n / 2) kk -= static_cast<long>(n);
    return two_pi * static_cast<double>(kk) / (static_cast<double>(n) * h);
}

// (e^{i alpha P} xi)(s) = xi(s + alpha), by phase multiplication in Fourier space.
inline StateVector shift(const StateVector& x, double alpha) {
    if (!(std::abs(alpha) < 0.4 * x.grid.length()))
        fail(Errc::ShiftTooLarge, "shift " + std::to_string(alpha) + " exceeds 0.4 of grid length");
    if (alpha == 0.0) return x;
    std::size_t n = x.size();
    double h = x.grid.step();
    StateVector out = x;
    dft_inplace(out.values, -1);
    for (std::size_t k = 0; k < n; ++k)
        out.values[k] *= std::polar(1.0 / static_cast<double>(n), dft_frequency(k, n, h) * alpha);
    dft_inplace(out.values, +1);
    return out;
}

inline StateVector multiply_phase(const StateVector& x, std::span<const double> theta) {
    if (theta.size() != x.size()) fail(Errc::GridMismatch, "phase samples do not match grid");
    StateVector out = x;
    for (std::size_t i = 0; i < x.size(); ++i) out.values[i] *= std::polar(1.0, theta[i]);
    return out;
}

template <class F>
    requires std::is_invocable_r_v<double, F, double>
StateVector multiply_phase(const StateVector& x, F&& theta) {
    StateVector out = x;
    for (std::size_t i = 0; i < x.size(); ++i) out.values[i] *= std::polar(1.0, theta(x.grid.point(i)));
    return out;
}

// ---- sampled arrays and continuous Fourier transforms ----------------------

struct Axis {
    double origin = 0.0;
    double step = 1.0;
    std::size_t size = 0;
    // Origin of the lattice produced by transforming this axis.
    double dual_origin = 0.0;

    static Axis make(double origin, double step, std::size_t size) {
        return {origin, step, size, -pi / step};
    }
    double at(std::size_t i) const { return origin + step * static_cast<double>(i); }
};

// Row-major n-dimensional complex array on a product lattice (last axis fastest).
struct SampledArray {
    std::vector<Axis> axes;
    std::vector<cplx> data;

    std::size_t stride(std::size_t axis) const {
        std::size_t s = 1;
        for (std::size_t a = axis + 1; a < axes.size(); ++a) s *= axes[a].size;
        return s;
    }

    static SampledArray zeros(std::vector<Axis> axes) {
        std::size_t total = 1;
        for (const auto& a : axes) total *= a.size;
        return {std::move(axes), std::vector<cplx>(total)};
    }
};

namespace detail {

inline void transform_axis(SampledArray& arr, std::size_t axis, int sign) {
    Axis& ax = arr.axes[axis];
    std::size_t n = ax.size;
    if (!is_power_of_two(n)) fail(Errc::BadShape, "axis length must be a power of two");
    double h = ax.step;
    double x0 = ax.origin;
    double dy = two_pi / (static_cast<double>(n) * h);
    double y0 = ax.dual_origin;
    double sg = sign < 0 ? -1.0 : 1.0;
    std::vector<cplx> pre(n), post(n);
    for (std::size_t j = 0; j < n; ++j) pre[j] = std::polar(1.0, sg * y0 * static_cast<double>(j) * h);
    for (std::size_t k = 0; k < n; ++k)
        post[k] = std::polar(inv_sqrt_two_pi * h, sg * (y0 + dy * static_cast<double>(k)) * x0);

    std::size_t stride = arr.stride(axis);
    std::size_t outer = arr.data.size() / (n * stride);
    std::vector<cplx> line(n);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < stride; ++in) {
            std::size_t base = o * n * stride + in;
            for (std::size_t j = 0; j < n; ++j) line[j] = arr.data[base + j * stride] * pre[j];
            dft_inplace(line, sign);
            for (std::size_t k = 0; k < n; ++k) arr.data[base + k * stride] = line[k] * post[k];
        }
    }
    ax = Axis{y0, dy, n, x0};
}

} // namespace detail

// (2 pi)^{-1/2} sum f(x) e^{-i lambda x} h along each listed axis.
inline SampledArray fourier(SampledArray arr, std::span<const std::size_t> axes) {
    for (auto a : axes) {
        if (a >= arr.axes.size()) fail(Errc::BadShape, "axis index out of range");
        detail::transform_axis(arr, a, -1);
    }
    return arr;
}

inline SampledArray inverse_fourier(SampledArray arr, std::span<const std::size_t> axes) {
    for (auto a : axes) {
        if (a >= arr.axes.size()) fail(Errc::BadShape, "axis index out of range");
        detail::transform_axis(arr, a, +1);
    }
    return arr;
}

inline SampledArray fourier(SampledArray arr) {
    std::vector<std::size_t> all(arr.axes.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return fourier(std::move(arr), all);
}

inline SampledArray inverse_fourier(SampledArray arr) {
    std::vector<std::size_t> all(arr.axes.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return inverse_fourier(std::move(arr), all);
}

inline SampledArray as_array(const StateVector& x) {
    return {{Axis::make(x.grid.s_min, x.grid.step(), x.size())}, x.values};
}

} // namespace kappa_weyl
