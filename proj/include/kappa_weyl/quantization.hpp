#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/grid.hpp"
#include "kappa_weyl/parallel.hpp"
#include "kappa_weyl/special.hpp"
#include "kappa_weyl/symbol.hpp"

namespace kappa_weyl {

// Prefactor of K_f and H_g in terms of the partial transform F_1 f (pinned by the oracle tests).
inline constexpr double kKernelConstant = inv_sqrt_two_pi;

enum class Provenance { Kappa, Ccr, Derived };

inline const char* to_string(Provenance p) {
    switch (p) {
    case Provenance::Kappa: return "kappa";
    case Provenance::Ccr: return "ccr";
    case Provenance::Derived: return "derived";
    }
    return "?";
}

struct KernelMatrix {
    GridSpec grid;
    Eigen::MatrixXcd entries;
    Provenance provenance = Provenance::Kappa;

    // int K(s,u) xi(u) du with trapezoid weight.
    StateVector apply(const StateVector& x) const {
        require_same_grid(grid, x.grid);
        Eigen::Map<const Eigen::VectorXcd> in(x.values.data(), static_cast<Eigen::Index>(x.size()));
        Eigen::VectorXcd out = entries * in * grid.step();
        return {grid, std::vector<cplx>(out.data(), out.data() + out.size())};
    }

    // Kernel of the operator product (this)(other).
    KernelMatrix then(const KernelMatrix& other) const {
        require_same_grid(grid, other.grid);
        return {grid, entries * other.entries * grid.step(), Provenance::Derived};
    }

    KernelMatrix adjoint() const { return {grid, entries.adjoint(), Provenance::Derived}; }

    // Hilbert-Schmidt norm of the discretized operator.
    double hs_norm() const { return entries.norm() * grid.step(); }
    cplx trace() const { return entries.diagonal().sum() * grid.step(); }
};

inline double relative_frobenius(const KernelMatrix& a, const KernelMatrix& b) {
    require_same_grid(a.grid, b.grid);
    double den = b.entries.norm();
    return den == 0.0 ? a.entries.norm() : (a.entries - b.entries).norm() / den;
}

namespace detail {

template <class Entry>
KernelMatrix build_kernel(const GridSpec& grid, Provenance prov, Entry&& entry) {
    auto n = static_cast<Eigen::Index>(grid.n_points);
    KernelMatrix k{grid, Eigen::MatrixXcd::Zero(n, n), prov};
    parallel_for(grid.n_points, [&](std::size_t i) {
        double s = grid.point(i);
        for (std::size_t j = 0; j < grid.n_points; ++j)
            k.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry(s, grid.point(j));
    });
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!std::isfinite(k.entries(i, j).real()) || !std::isfinite(k.entries(i, j).imag()))
                fail(Errc::SymbolNotEvaluable, "symbol transform is not finite on the grid");
    return k;
}

// Range of u - s outside which F_1 f vanishes, if the symbol knows it.
template <class S>
double lambda_extent(const S& s) {
    if constexpr (requires { s.spectral_support(); }) {
        Box b = s.spectral_support();
        return std::max(b.x_hi, -b.x_lo);
    } else {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace detail

// Kernel of f(T,R): K(s,u) = c0 (F_1 f)(u - s, (e^{-s} - e^{-u})/(u - s)).
template <PositionSymbol F>
KernelMatrix kernel_kappa(const F& f, const GridSpec& grid) {
    double lam_max = detail::lambda_extent(f);
    return detail::build_kernel(grid, Provenance::Kappa, [&](double s, double u) -> cplx {
        if (std::abs(u - s) > lam_max) return 0.0;
        return kKernelConstant * f.partial_fourier_t(u - s, divided_exp(s, u));
    });
}

// Kernel of pi_(+/-)(phi) = int phi(alpha,beta) W_(+/-)(alpha,beta) dalpha dbeta.
template <MomentumSymbol S>
KernelMatrix kernel_pi(const S& phi, const GridSpec& grid, int sign = +1) {
    Box b = phi.support();
    double sg = sign >= 0 ? 1.0 : -1.0;
    return detail::build_kernel(grid, Provenance::Kappa, [&](double s, double u) -> cplx {
        double a = u - s;
        if (a < b.x_lo || a > b.x_hi) return 0.0;
        return phi.beta_transform(a, sg * divided_exp(s, u));
    });
}

// Canonical Weyl kernel H_g(s,u) = c0 (F_1 g)(u - s, (u + s)/2).
template <PositionSymbol G>
KernelMatrix kernel_ccr(const G& g, const GridSpec& grid) {
    double lam_max = detail::lambda_extent(g);
    return detail::build_kernel(grid, Provenance::Ccr, [&](double s, double u) -> cplx {
        if (std::abs(u - s) > lam_max) return 0.0;
        return kKernelConstant * g.partial_fourier_t(u - s, 0.5 * (u + s));
    });
}

// ---- CCR bridge ---------------------------------------------------------------

// g with (F_1 g)(lambda, q) = (F_1 f)(lambda, e^{-q} sinh(lambda/2)/(lambda/2)).
template <PositionSymbol F>
struct CcrBridge {
    using domain = PositionDomain;
    F f;

    cplx partial_fourier_t(double lam, double q) const {
        return f.partial_fourier_t(lam, std::exp(-q) * sinhc(0.5 * lam));
    }

    double lambda_max() const { return detail::lambda_extent(f); }

    Box spectral_support() const {
        double l = lambda_max();
        return {-l, l, -1e300, 1e300};
    }

    Box support() const {
        Box b = f.support();
        double r_hi = std::max(b.y_hi, 1e-300);
        double r_lo = std::max(b.y_lo, std::exp(-30.0));
        double q_lo = -std::log(r_hi) - 1.0;
        double q_hi = std::log(sinhc(0.5 * std::min(lambda_max(), 60.0)) / r_lo) + 1.0;
        double t = std::max(std::abs(b.x_lo), std::abs(b.x_hi)) * 1.5 + 2.0;
        return {-t, t, q_lo, q_hi};
    }

    // Inverse partial transform by trapezoid quadrature over the lambda support.
    cplx value(double t, double q) const {
        double l = std::min(lambda_max(), 60.0);
        std::size_t n = 2048;
        double dl = 2 * l / static_cast<double>(n);
        cplx acc = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            double lam = -l + dl * static_cast<double>(k);
            double wk = (k == 0 || k == n) ? 0.5 : 1.0;
            acc += wk * partial_fourier_t(lam, q) * std::polar(1.0, lam * t);
        }
        return acc * dl * inv_sqrt_two_pi;
    }
};

template <PositionSymbol F>
CcrBridge<F> kappa_to_ccr(const F& f) {
    return {f};
}

// Samples of the bridge symbol g on a (t, q) lattice, computed by FFT from F_1 g.
template <PositionSymbol F>
SampledPosition kappa_to_ccr_sampled(const F& f, const Lattice1D& q_lat, std::size_t n_lambda = 256) {
    auto g = kappa_to_ccr(f);
    if (!is_power_of_two(n_lambda)) fail(Errc::BadShape, "lambda sample count must be a power of two");
    double l = std::min(g.lambda_max(), 60.0);
    double dl = 2.0 * l / static_cast<double>(n_lambda);
    auto arr = SampledArray::zeros({Axis::make(-0.5 * dl * n_lambda, dl, n_lambda), Axis::make(q_lat.origin, q_lat.step, q_lat.size)});
    parallel_for(n_lambda, [&](std::size_t i) {
        double lam = arr.axes[0].at(i);
        for (std::size_t j = 0; j < q_lat.size; ++j) arr.data[i * q_lat.size + j] = g.partial_fourier_t(lam, q_lat.at(j));
    });
    std::size_t axis0[] = {0};
    arr = inverse_fourier(std::move(arr), axis0);
    return SampledPosition(Lattice1D{arr.axes[0].origin, arr.axes[0].step, n_lambda}, q_lat, std::move(arr.data));
}

// ---- conjugation by grid unitaries --------------------------------------------

// Kernel of e^{i theta P} K e^{-i theta P}.
inline KernelMatrix conjugate_by_shift(const KernelMatrix& k, double theta) {
    auto n = static_cast<Eigen::Index>(k.grid.n_points);
    auto shift_columns = [&](const Eigen::MatrixXcd& m) {
        Eigen::MatrixXcd out(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            StateVector col{k.grid, std::vector<cplx>(m.col(c).data(), m.col(c).data() + n)};
            auto moved = shift(col, theta);
            out.col(c) = Eigen::Map<Eigen::VectorXcd>(moved.values.data(), n);
        }
        return out;
    };
    Eigen::MatrixXcd b = shift_columns(k.entries);
    Eigen::MatrixXcd m = shift_columns(b.adjoint()).adjoint();
    return {k.grid, m, Provenance::Derived};
}

// Kernel of e^{i a Q} K e^{-i a Q}.
inline KernelMatrix conjugate_by_phase(const KernelMatrix& k, double a) {
    KernelMatrix out = k;
    out.provenance = Provenance::Derived;
    for (std::size_t i = 0; i < k.grid.n_points; ++i)
        for (std::size_t j = 0; j < k.grid.n_points; ++j)
            out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *=
                std::polar(1.0, a * (k.grid.point(i) - k.grid.point(j)));
    return out;
}

} // namespace kappa_weyl

#include "kappa_weyl/cartesian.hpp"
