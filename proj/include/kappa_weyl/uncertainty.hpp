#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/fft.hpp"
#include "kappa_weyl/grid.hpp"
#include "kappa_weyl/special.hpp"

namespace kappa_weyl {

struct MomentReport {
    double mean_T = 0.0, var_T = 0.0;
    double mean_R = 0.0, var_R = 0.0;
    double delta_T = 0.0, delta_R = 0.0;
    double product = 0.0;
    double bound = 0.0; // mean_R / (2 kappa)
};

// Relative spectral amplitude allowed in the outer 5% of frequencies.
inline constexpr double kSpectralEdgeTol = 1e-8;

// T = P/kappa and R = e^{-Q}; P moments in Fourier space, R moments in position space.
inline MomentReport moments(const StateVector& x, double kappa = 1.0, double edge_tol = 1e-10) {
    if (!(kappa > 0)) fail(Errc::InvalidArgument, "kappa must be positive");
    std::size_t n = x.size();
    double h = x.grid.step();
    double nrm = l2_norm(x);
    if (!(nrm > 0)) fail(Errc::NonNormalizable, "zero state");
    StateVector unit = x;
    for (auto& v : unit.values) v /= nrm;
    check_edge(unit, edge_tol);

    if (spectral_edge_ratio(unit) > kSpectralEdgeTol) fail(Errc::EdgeLeak, "state is not resolved in momentum space");
    std::vector<cplx> spec = unit.values;
    dft_inplace(spec, -1);
    double total = 0.0;
    std::vector<double> prob(n);
    for (std::size_t k = 0; k < n; ++k) {
        prob[k] = std::norm(spec[k]);
        total += prob[k];
    }

    MomentReport r;
    double mp = 0.0;
    for (std::size_t k = 0; k < n; ++k) mp += dft_frequency(k, n, h) * prob[k];
    mp /= total;
    double vp = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double d = dft_frequency(k, n, h) - mp;
        vp += d * d * prob[k];
    }
    vp /= total;

    double mr = 0.0;
    for (std::size_t i = 0; i < n; ++i) mr += std::exp(-x.grid.point(i)) * std::norm(unit.values[i]);
    mr *= h;
    double vr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::exp(-x.grid.point(i)) - mr;
        vr += d * d * std::norm(unit.values[i]);
    }
    vr *= h;

    r.mean_T = mp / kappa;
    r.var_T = vp / (kappa * kappa);
    r.mean_R = mr;
    r.var_R = vr;
    r.delta_T = std::sqrt(std::max(0.0, r.var_T));
    r.delta_R = std::sqrt(std::max(0.0, r.var_R));
    r.product = r.delta_T * r.delta_R;
    r.bound = mr / (2.0 * kappa);
    return r;
}

// xi(s - lambda): moves the state towards larger s, i.e. smaller R.
inline StateVector translate(const StateVector& x, double lambda) { return shift(x, -lambda); }

struct BumpState {
    StateVector state;
    double half_width = 0.0;
};

namespace detail {

inline double bump_delta_p(const GridSpec& grid, double lo, double half_width) {
    auto s = make_state(grid, BumpGen{lo, lo + 2.0 * half_width});
    return moments(s).delta_T;
}

} // namespace detail

// Bump on [lambda, lambda + 2w], w the smallest width (by bisection) with Delta P < eps.
inline BumpState make_bump_state(double eps, double lambda, const GridSpec& grid) {
    if (!(eps > 0)) fail(Errc::InvalidArgument, "eps must be positive");
    if (lambda < 0) fail(Errc::InvalidArgument, "lambda must be non-negative");
    double guard = 0.05 * grid.length() + 2.0 * grid.step();
    double w_hi = 0.5 * (grid.s_max - guard - lambda);
    if (!(w_hi > 4.0 * grid.step()) || lambda < grid.s_min + guard)
        fail(Errc::GridTooSmall, "translated bump does not fit the grid");
    double target = 0.98 * eps;
    double w_lo = std::max(2.0 * grid.step(), 0.25);
    if (w_lo >= w_hi || detail::bump_delta_p(grid, 0.0, w_hi) >= target)
        fail(Errc::GridTooSmall, "grid too short to widen the bump to Delta P < " + std::to_string(eps));
    for (int it = 0; it < 60 && w_hi - w_lo > 1e-6 * w_hi; ++it) {
        double mid = 0.5 * (w_lo + w_hi);
        if (detail::bump_delta_p(grid, 0.0, mid) < target)
            w_hi = mid;
        else
            w_lo = mid;
    }
    return {make_state(grid, BumpGen{lambda, lambda + 2.0 * w_hi}), w_hi};
}

// Grid on which bumps with Delta P < eps fit for every translation up to lambda_max.
inline GridSpec bump_grid(double eps, double lambda_max, double step = 0.05) {
    double w = 1.1 * 1.7543 / eps;
    double span = lambda_max + 2.0 * w;
    double s_min = -0.1 * span - 1.0, s_max = 1.15 * span + 1.0;
    std::size_t n = next_power_of_two(static_cast<std::size_t>(std::ceil((s_max - s_min) / step)));
    return GridSpec::make(std::max<std::size_t>(n, 8), s_min, s_max);
}

// ---- physical scales ------------------------------------------------------------

struct PhysicalScales {
    double kappa_inv_m = 1e-35;
    double c_m_per_s = 299792458.0;
};

// L_max = 2 kappa c dT dR
inline double estimate_L(double dT_s, double dR_m, const PhysicalScales& sc = {}) {
    if (!(dT_s > 0 && dR_m > 0 && sc.kappa_inv_m > 0 && sc.c_m_per_s > 0))
        fail(Errc::InvalidArgument, "estimate inputs must be positive");
    return 2.0 * sc.c_m_per_s * dT_s * dR_m / sc.kappa_inv_m;
}

// 1/kappa needed so that L = 2 kappa (c dT dR).
inline double required_kappa_inv(double L_m, double c_dT_dR_m2) {
    if (!(L_m > 0 && c_dT_dR_m2 > 0)) fail(Errc::InvalidArgument, "estimate inputs must be positive");
    return 2.0 * c_dT_dR_m2 / L_m;
}

struct Scenario {
    std::string name;
    double dT_s = 0.0;
    double dR_m = 0.0;
    double L_m = 0.0;         // L_max, or the given length for the inverse problem
    double kappa_inv_m = 0.0; // given, or required
};

inline Scenario scenario_lhc(const PhysicalScales& sc = {}) {
    Scenario s{"lhc", 1e-19 / sc.c_m_per_s, 1e-19, 0.0, sc.kappa_inv_m};
    s.L_m = estimate_L(s.dT_s, s.dR_m, sc);
    return s;
}

inline Scenario scenario_atomic(const PhysicalScales& sc = {}) {
    Scenario s{"atomic", 1.5e-16, 0.5e-10, 0.0, sc.kappa_inv_m};
    s.L_m = estimate_L(s.dT_s, s.dR_m, sc);
    return s;
}

inline Scenario scenario_earth(const PhysicalScales& sc = {}) {
    Scenario s{"earth", 1e-19 / sc.c_m_per_s, 1e-19, 1e7, 0.0};
    s.kappa_inv_m = required_kappa_inv(s.L_m, sc.c_m_per_s * s.dT_s * s.dR_m);
    return s;
}

} // namespace kappa_weyl
