#pragma once

#include <cmath>
#include <cstdio>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "kappa_weyl/cartesian.hpp"
#include "kappa_weyl/error.hpp"
#include "kappa_weyl/grid.hpp"
#include "kappa_weyl/quantization.hpp"
#include "kappa_weyl/special.hpp"
#include "kappa_weyl/symbol.hpp"
#include "kappa_weyl/symbol_algebra.hpp"

namespace kappa_weyl {

// Tr f(T,R) = kTraceConstant * int dt int_{r>0} dr/r f(t,r)
inline constexpr double kTraceConstant = 1.0 / two_pi;
// ||f(T,R)||_HS = kHsConstant * (int dt int_{r>0} dr/r |f|^2)^{1/2}
inline constexpr double kHsConstant = inv_sqrt_two_pi;

struct FunctionalConfig {
    double log_step = 0.01;   // step in s = -ln r
    double origin_tol = 1e-8; // allowed log-radius density at r_min relative to the total
    double floor = 1e-30;     // epsilon floor of relative errors
};

struct TraceReport {
    cplx symbol_side = 0.0;
    cplx operator_side = 0.0;
    double relative_error = 0.0;
};

namespace detail {

// Nodes s_k = -ln r covering the r-support of f down to r_min = e^{-s_max}.
template <class F>
std::vector<double> log_radius_nodes(const F& f, const GridSpec& grid, double step) {
    Box b = f.support();
    std::vector<double> s;
    if (!(b.y_hi > 0.0)) return s;
    double lo = -std::log(b.y_hi);
    double hi = grid.s_max;
    if (b.y_lo > 0.0) hi = std::min(hi, -std::log(b.y_lo));
    if (!(hi > lo)) return s;
    auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    n = std::max<std::size_t>(n, 8);
    for (std::size_t k = 0; k <= n; ++k) s.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n));
    return s;
}

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) acc += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);
    return acc;
}

inline cplx trapezoid(const std::vector<double>& x, const std::vector<cplx>& y) {
    cplx acc = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) acc += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);
    return acc;
}

// t-lattice resolving f along its support.
template <class F>
Lattice1D t_lattice(const F& f) {
    Box b = f.support();
    double ext = lambda_extent(f);
    double dt = std::isfinite(ext) ? std::min(0.05, 0.5 * pi / ext) : 0.05;
    auto n = static_cast<std::size_t>(std::ceil((b.x_hi - b.x_lo) / dt)) + 1;
    return {b.x_lo, (b.x_hi - b.x_lo) / static_cast<double>(n - 1), n};
}

// int dt |f(t,r)|^p
template <class F>
double t_abs_integral(const F& f, const Lattice1D& tl, double r, int p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < tl.size; ++i) {
        double v = std::abs(cplx(f.value(tl.at(i), r)));
        acc += (p == 1 ? v : v * v);
    }
    return acc * tl.step;
}

struct OriginMass {
    double edge = 0.0;  // int dt |f(t, r_min)|^p
    double total = 0.0; // int ds int dt |f(t, e^{-s})|^p
};

template <class F>
OriginMass origin_mass(const F& f, const GridSpec& grid, const std::vector<double>& s, int p) {
    OriginMass m;
    if (s.empty()) return m;
    auto tl = t_lattice(f);
    double r_min = std::exp(-grid.s_max);
    if (!(f.support().y_lo > r_min)) m.edge = t_abs_integral(f, tl, r_min, p);
    std::size_t stride = std::max<std::size_t>(1, s.size() / 400);
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < s.size(); k += stride) {
        xs.push_back(s[k]);
        ys.push_back(t_abs_integral(f, tl, std::exp(-s[k]), p));
    }
    m.total = trapezoid(xs, ys);
    return m;
}

// Raises DivergentAtOrigin when the log-radius density at r_min is not negligible.
inline void check_origin(const OriginMass& m, double tol) {
    if (m.edge > tol * m.total) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", m.total > 0 ? m.edge / m.total : std::numeric_limits<double>::infinity());
        fail(Errc::DivergentAtOrigin, std::string("log-radius density at r_min is ") + buf +
                                          " of the total; the integral over r > 0 does not converge");
    }
}

template <class F>
void origin_guard(const F& f, const GridSpec& grid, const std::vector<double>& s, int p, double tol) {
    check_origin(origin_mass(f, grid, s, p), tol);
}

template <class F>
cplx trace_unguarded(const F& f, const std::vector<double>& s) {
    std::vector<cplx> y(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) y[k] = sqrt_two_pi * f.partial_fourier_t(0.0, std::exp(-s[k]));
    return kTraceConstant * trapezoid(s, y);
}

} // namespace detail

// kTraceConstant * int ds int dt f(t, e^{-s}), using int dt f = sqrt(2 pi) F_1 f(0, r).
template <PositionSymbol F>
cplx trace_integral(const F& f, const GridSpec& grid, const FunctionalConfig& cfg = {}) {
    auto s = detail::log_radius_nodes(f, grid, cfg.log_step);
    detail::origin_guard(f, grid, s, 1, cfg.origin_tol);
    return detail::trace_unguarded(f, s);
}

template <PositionSymbol F>
TraceReport trace_symbol(const F& f, const GridSpec& grid = default_grid(), const FunctionalConfig& cfg = {}) {
    TraceReport rep;
    rep.symbol_side = trace_integral(f, grid, cfg);
    cplx diag = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i)
        diag += kKernelConstant * f.partial_fourier_t(0.0, std::exp(-grid.point(i)));
    rep.operator_side = diag * grid.step();
    rep.relative_error = std::abs(rep.symbol_side - rep.operator_side) / std::max(std::abs(rep.symbol_side), cfg.floor);
    return rep;
}

// (int dt int_{r>0} dr/r |f|^2)^{1/2}
template <PositionSymbol F>
double hs_integral(const F& f, const GridSpec& grid = default_grid(), const FunctionalConfig& cfg = {}) {
    auto s = detail::log_radius_nodes(f, grid, cfg.log_step);
    detail::origin_guard(f, grid, s, 2, cfg.origin_tol);
    auto tl = detail::t_lattice(f);
    std::vector<double> y(s.size());
    parallel_for(s.size(), [&](std::size_t k) { y[k] = detail::t_abs_integral(f, tl, std::exp(-s[k]), 2); });
    return std::sqrt(detail::trapezoid(s, y));
}

// Hilbert-Schmidt norm of f(T,R).
template <PositionSymbol F>
double hs_norm(const F& f, const GridSpec& grid = default_grid(), const FunctionalConfig& cfg = {}) {
    return kHsConstant * hs_integral(f, grid, cfg);
}

// The origin guard applies to the field as a whole, not fiber by fiber.
template <PositionSymbol F>
cplx tau_radial(const RadialSymbolField<F>& field, const GridSpec& grid = default_grid(),
                const FunctionalConfig& cfg = {}) {
    cplx acc = 0.0;
    detail::OriginMass field_mass;
    for (std::size_t i = 0; i < field.fibers.size(); ++i) {
        auto s = detail::log_radius_nodes(field.fibers[i], grid, cfg.log_step);
        auto m = detail::origin_mass(field.fibers[i], grid, s, 1);
        field_mass.edge += field.weights[i] * m.edge;
        field_mass.total += field.weights[i] * m.total;
        acc += field.weights[i] * detail::trace_unguarded(field.fibers[i], s);
    }
    detail::check_origin(field_mass, cfg.origin_tol);
    return acc;
}

// Angular nodes/weights for the cartesian integral (independent of sphere_directions).
inline SphereSampling cartesian_angular_rule(int d) {
    check_dimension(d);
    SphereSampling s{d, {}, {}};
    if (d == 1) return sphere_directions(1);
    if (d == 2) {
        std::size_t n = 97;
        for (std::size_t i = 0; i < n; ++i) {
            double phi = two_pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            Eigen::VectorXd c(2);
            c << std::cos(phi), std::sin(phi);
            s.directions.push_back(c);
            s.weights.push_back(two_pi / static_cast<double>(n));
        }
        return s;
    }
    // Gauss-Legendre in cos(theta) times trapezoid in phi
    std::size_t nz = 48, nphi = 96;
    std::vector<double> z(nz), wz(nz);
    for (std::size_t i = 0; i < nz; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(nz) + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= nz; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            double dp = static_cast<double>(nz) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                wz[i] = 2.0 / ((1.0 - x * x) * dp * dp);
                break;
            }
        }
        z[i] = x;
    }
    for (std::size_t i = 0; i < nz; ++i)
        for (std::size_t j = 0; j < nphi; ++j) {
            double phi = two_pi * static_cast<double>(j) / static_cast<double>(nphi);
            double rho = std::sqrt(1.0 - z[i] * z[i]);
            Eigen::VectorXd c(3);
            c << rho * std::cos(phi), rho * std::sin(phi), z[i];
            s.directions.push_back(c);
            s.weights.push_back(wz[i] * two_pi / static_cast<double>(nphi));
        }
    return s;
}

// 2 pi^{d/2}/Gamma(d/2) times kTraceConstant times the spherical mean of
// int dt int dr/r f(t, r c), i.e. kTraceConstant * int dt dx |x|^{-d} f(t,x).
inline cplx tau_cartesian(const CartesianMixture& f, int d, const GridSpec& grid = default_grid(),
                          const FunctionalConfig& cfg = {}) {
    check_dimension(d);
    if (f.d != d) fail(Errc::UnsupportedDimension, "symbol dimension does not match d");
    auto rule = cartesian_angular_rule(d);
    double r_min = std::exp(-grid.s_max);
    // radial extent from the term centres and widths
    double r_hi = 0.0;
    for (const auto& k : f.terms) {
        double widest = 1.0 / std::sqrt(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k.precision).eigenvalues().minCoeff());
        r_hi = std::max(r_hi, k.x0.norm() + tail_radius() * widest);
    }
    if (r_hi == 0.0) return 0.0;
    double s_lo = -std::log(r_hi), s_hi = grid.s_max;
    auto ns = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / cfg.log_step));
    // t-integrals are exact for each term: int dt e^{-(t-t0)^2/2 sigma^2} e^{i u t}
    std::vector<cplx> tfac;
    for (const auto& k : f.terms)
        tfac.push_back(sqrt_two_pi * k.sigma_t * std::polar(std::exp(-0.5 * k.sigma_t * k.sigma_t * k.u * k.u), k.u * k.t0));
    auto spatial = [&](const Eigen::VectorXd& x) {
        cplx acc = 0.0;
        for (std::size_t m = 0; m < f.terms.size(); ++m) {
            const auto& k = f.terms[m];
            Eigen::VectorXd dx = x - k.x0;
            acc += k.amp * tfac[m] * std::polar(std::exp(-0.5 * dx.dot(k.precision * dx)), k.v.dot(x));
        }
        return acc;
    };
    cplx total = 0.0;
    double abs_total = 0.0, abs_edge = 0.0;
    for (std::size_t a = 0; a < rule.directions.size(); ++a) {
        const auto& c = rule.directions[a];
        cplx radial = 0.0;
        double radial_abs = 0.0;
        for (std::size_t k = 0; k <= ns; ++k) {
            double s = s_lo + (s_hi - s_lo) * static_cast<double>(k) / static_cast<double>(ns);
            double wk = (k == 0 || k == ns) ? 0.5 : 1.0;
            cplx v = spatial(c * std::exp(-s));
            radial += wk * v;
            radial_abs += wk * std::abs(v);
        }
        double ds = (s_hi - s_lo) / static_cast<double>(ns);
        total += rule.weights[a] * radial * ds;
        abs_total += rule.weights[a] * radial_abs * ds;
        abs_edge += rule.weights[a] * std::abs(spatial(c * r_min));
    }
    if (abs_edge > cfg.origin_tol * abs_total && abs_edge > 0.0)
        fail(Errc::DivergentAtOrigin, "|x|^{-d} f is not integrable at the origin");
    return kTraceConstant * total; // the rule's weights sum to the sphere area
}

// ---- cyclicity and positivity ------------------------------------------------------

struct TracePropertiesReport {
    cplx tau_fg = 0.0;
    cplx tau_gf = 0.0;
    double cyclicity_residual = 0.0;
    double positivity = 0.0;      // Re tau(conj(f) star f)
    double positivity_imag = 0.0; // Im tau(conj(f) star f)
    double hs_squared = 0.0;
    double scale = 0.0;
};

namespace detail {

// tau of the symbol whose transform is phi1 * phi2 / (2 pi), from the alpha = 0 line.
template <MomentumSymbol S1, MomentumSymbol S2>
cplx trace_of_star(const S1& phi1, const S2& phi2, const GridSpec& grid, const StarConfig& scfg,
                   const FunctionalConfig& cfg) {
    auto [da, db] = common_steps(phi1, phi2, scfg);
    Operand L(on_lattice(phi1, da, db));
    Operand R(on_lattice(phi2, da, db));
    if (L.peak == 0.0 || R.peak == 0.0) return 0.0;
    Box box = product_box(L, R, 0.01 * scfg.tail_tol);
    double hy = 0.75 * (box.y_hi - box.y_lo) + 2 * db;
    double cy = 0.5 * (box.y_lo + box.y_hi);
    auto bo = Lattice1D::covering(cy - hy, cy + hy, db);
    auto line = twisted_product(L, R, {0.0}, bo, StarTwist{});
    // integrate over the whole alias-free r-range of the beta lattice
    double r_hi = 0.95 * pi / db;
    std::vector<double> s;
    double lo = -std::log(r_hi), hi = grid.s_max;
    auto n = static_cast<std::size_t>(std::ceil((hi - lo) / cfg.log_step));
    std::vector<cplx> y(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double sk = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
        s.push_back(sk);
        double r = std::exp(-sk);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < bo.size; ++j) acc += line[j] * std::polar(1.0, bo.at(j) * r);
        y[k] = acc * db / two_pi;
    }
    return kTraceConstant * trapezoid(s, y);
}

} // namespace detail

inline TracePropertiesReport check_trace_properties(const Symbol2D& f, const Symbol2D& g, const GridSpec& grid = default_grid(),
                                             const StarConfig& scfg = {}, const FunctionalConfig& cfg = {}) {
    TracePropertiesReport rep;
    auto fh = fourier(f);
    auto gh = fourier(g);
    rep.tau_fg = detail::trace_of_star(fh, gh, grid, scfg, cfg);
    rep.tau_gf = detail::trace_of_star(gh, fh, grid, scfg, cfg);
    rep.cyclicity_residual = std::abs(rep.tau_fg - rep.tau_gf);
    cplx pos = detail::trace_of_star(fourier(conj(f)), fh, grid, scfg, cfg);
    rep.positivity = pos.real();
    rep.positivity_imag = pos.imag();
    double hf = hs_norm(f, grid, cfg);
    rep.hs_squared = hf * hf;
    rep.scale = hf * hs_norm(g, grid, cfg);
    return rep;
}

// ---- compactness ----------------------------------------------------------------

// Leading singular values of the discretized operator, non-increasing.
inline std::vector<double> singular_decay(const KernelMatrix& k, std::size_t count) {
    if (count > k.grid.n_points) fail(Errc::InvalidArgument, "more singular values requested than grid points");
    Eigen::MatrixXcd m = k.entries * k.grid.step();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = sv(static_cast<Eigen::Index>(i));
    return out;
}

} // namespace kappa_weyl
