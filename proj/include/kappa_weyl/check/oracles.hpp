#pragma once

#include <cmath>
#include <vector>

#include "kappa_weyl/grid.hpp"
#include "kappa_weyl/radial_group.hpp"
#include "kappa_weyl/special.hpp"
#include "kappa_weyl/symbol.hpp"

namespace kappa_weyl::check {

// Spectral edge allowed for probe states; the FFT shift rings otherwise.
inline constexpr double kResolvedTol = 1e-8;

struct OracleConfig {
    double step_alpha = 0.02;
    double rel_cut = 1e-15; // contributions below this fraction of the peak are dropped
    double beta_safety = 1.3;
    double noise_floor = 1e-13; // below this fraction of the state peak a shifted row is FFT noise
};

// (1/2pi) int dalpha dbeta fhat(alpha,beta) W(alpha,beta) xi, by direct quadrature:
// FFT shift in alpha, then a beta-sum whose step avoids aliasing of e^{i gamma beta e^{-s}}.
inline void require_resolved(const StateVector& x) {
    if (spectral_edge_ratio(x) > kResolvedTol) fail(Errc::EdgeLeak, "probe state is not resolved on this grid");
}

inline StateVector weyl_integral_apply(const MomentumMixture& fhat, const StateVector& x, const OracleConfig& cfg = {}) {
    require_resolved(x);
    const auto& g = x.grid;
    std::size_t n = g.n_points;
    Box box = fhat.support();
    double peak = 0.0;
    for (const auto& t : fhat.terms) peak += std::abs(t.a);
    double xpeak = 0.0;
    for (const auto& v : x.values) xpeak = std::max(xpeak, std::abs(v));
    // beta-profile extent of the partial inverse transform in beta (r-extent of f)
    double rext = 0.0;
    for (const auto& t : fhat.terms) rext = std::max(rext, std::abs(t.v) + tail_radius() / t.tau);

    std::vector<cplx> out(n, 0.0);
    double bound = 0.4 * g.length();
    double a_lo = std::max(box.x_lo, -bound + 1e-9), a_hi = std::min(box.x_hi, bound - 1e-9);
    auto na = static_cast<long>(std::floor((a_hi - a_lo) / cfg.step_alpha));
    double da = cfg.step_alpha;
    for (long ia = 0; ia <= na; ++ia) {
        double alpha = a_lo + da * static_cast<double>(ia);
        double amax = 0.0;
        for (const auto& t : fhat.terms) {
            double d = (alpha - t.p) / t.sigma;
            amax += std::abs(t.a) * std::exp(-0.5 * d * d);
        }
        if (amax < cfg.rel_cut * peak) continue;
        StateVector moved = shift(x, alpha);
        double gam = exprel_neg(alpha);
        // rows where the shifted state matters, and the largest phase frequency there
        double rho_max = 0.0;
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; ++i) {
            double src = g.point(i) + alpha;
            if (src < g.s_min || src > g.s_max) continue; // wrapped by the periodic shift
            double m = std::abs(moved.values[i]);
            if (m * amax <= cfg.rel_cut * peak * xpeak || m <= cfg.noise_floor * xpeak) continue;
            rows.push_back(i);
            rho_max = std::max(rho_max, gam * std::exp(-g.point(i)));
        }
        if (rows.empty()) continue;
        double period = cfg.beta_safety * (rho_max + 2.0 * rext) + 1.0;
        double db = two_pi / period;
        auto nb = static_cast<long>(std::ceil((box.y_hi - box.y_lo) / db));
        db = (box.y_hi - box.y_lo) / static_cast<double>(nb);
        std::vector<cplx> fb(static_cast<std::size_t>(nb + 1));
        for (long ib = 0; ib <= nb; ++ib) fb[static_cast<std::size_t>(ib)] = fhat.value(alpha, box.y_lo + db * static_cast<double>(ib));
        for (std::size_t i : rows) {
            double rho = gam * std::exp(-g.point(i));
            cplx z = std::polar(1.0, rho * box.y_lo);
            cplx step = std::polar(1.0, rho * db);
            cplx acc = 0.0;
            for (long ib = 0; ib <= nb; ++ib) {
                acc += fb[static_cast<std::size_t>(ib)] * z;
                z *= step;
            }
            out[i] += acc * db * moved.values[i];
        }
    }
    for (auto& v : out) v *= da / two_pi;
    return {g, out};
}

// (1/2pi) int ghat(alpha,beta) e^{i(alpha P + beta Q)} xi with
// (e^{i(alpha P + beta Q)} xi)(s) = e^{i alpha beta/2} e^{i beta s} xi(s + alpha).
inline StateVector ccr_integral_apply(const MomentumMixture& ghat, const StateVector& x, const OracleConfig& cfg = {}) {
    require_resolved(x);
    const auto& g = x.grid;
    std::size_t n = g.n_points;
    Box box = ghat.support();
    double rext = 0.0;
    for (const auto& t : ghat.terms) rext = std::max(rext, std::abs(t.v) + tail_radius() / t.tau);
    double smax = std::max(std::abs(g.s_min), std::abs(g.s_max)) + 0.5 * std::max(std::abs(box.x_lo), std::abs(box.x_hi));
    double db = two_pi / (cfg.beta_safety * (smax + rext) + 1.0);
    auto nb = static_cast<long>(std::ceil((box.y_hi - box.y_lo) / db));
    db = (box.y_hi - box.y_lo) / static_cast<double>(nb);
    double bound = 0.4 * g.length();
    double a_lo = std::max(box.x_lo, -bound + 1e-9), a_hi = std::min(box.x_hi, bound - 1e-9);
    auto na = static_cast<long>(std::floor((a_hi - a_lo) / cfg.step_alpha));
    std::vector<cplx> out(n, 0.0);
    for (long ia = 0; ia <= na; ++ia) {
        double alpha = a_lo + cfg.step_alpha * static_cast<double>(ia);
        StateVector moved = shift(x, alpha);
        std::vector<cplx> fb(static_cast<std::size_t>(nb + 1));
        for (long ib = 0; ib <= nb; ++ib) fb[static_cast<std::size_t>(ib)] = ghat.value(alpha, box.y_lo + db * static_cast<double>(ib));
        for (std::size_t i = 0; i < n; ++i) {
            double src = g.point(i) + alpha;
            if (src < g.s_min || src > g.s_max) continue;
            double k = g.point(i) + 0.5 * alpha;
            cplx z = std::polar(1.0, k * box.y_lo);
            cplx step = std::polar(1.0, k * db);
            cplx acc = 0.0;
            for (long ib = 0; ib <= nb; ++ib) {
                acc += fb[static_cast<std::size_t>(ib)] * z;
                z *= step;
            }
            out[i] += acc * db * moved.values[i];
        }
    }
    for (auto& v : out) v *= cfg.step_alpha / two_pi;
    return {g, out};
}

inline double relative_l2(const StateVector& a, const StateVector& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

// Least-squares c with c * a ~ b.
inline cplx fit_constant(const std::vector<StateVector>& a, const std::vector<StateVector>& b) {
    cplx num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t i = 0; i < a[k].size(); ++i) {
            num += std::conj(a[k].values[i]) * b[k].values[i];
            den += std::norm(a[k].values[i]);
        }
    return num / den;
}

} // namespace kappa_weyl::check
