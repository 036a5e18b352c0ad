#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/special.hpp"
#include "kappa_weyl/symbol.hpp"
#include "kappa_weyl/symbol_algebra.hpp"

namespace kappa_weyl {

// amp * exp(-(t-t0)^2/2 sigma_t^2 - (x-x0)^T M (x-x0)/2) * exp(i(u t + v.x)) on R^{1+d}
struct CartesianTerm {
    cplx amp = 1.0;
    double t0 = 0.0, sigma_t = 1.0, u = 0.0;
    Eigen::VectorXd x0;
    Eigen::MatrixXd precision;
    Eigen::VectorXd v;
};

struct CartesianMixture {
    int d = 1;
    std::vector<CartesianTerm> terms;

    cplx value(double t, const Eigen::VectorXd& x) const {
        cplx acc = 0.0;
        for (const auto& k : terms) {
            double dt = (t - k.t0) / k.sigma_t;
            Eigen::VectorXd dx = x - k.x0;
            double e = -0.5 * dt * dt - 0.5 * dx.dot(k.precision * dx);
            acc += k.amp * std::polar(std::exp(e), k.u * t + k.v.dot(x));
        }
        return acc;
    }
};

inline void check_dimension(int d) {
    if (d < 1 || d > 3) fail(Errc::UnsupportedDimension, "dimension must be 1, 2 or 3, got " + std::to_string(d));
}

// Isotropic-or-diagonal term builder.
inline CartesianTerm cartesian_gaussian(cplx amp, double t0, double sigma_t, const Eigen::VectorXd& x0,
                                        const Eigen::VectorXd& sigma_x, double u = 0.0,
                                        Eigen::VectorXd v = Eigen::VectorXd()) {
    CartesianTerm k;
    k.amp = amp;
    k.t0 = t0;
    k.sigma_t = sigma_t;
    k.u = u;
    k.x0 = x0;
    k.precision = sigma_x.array().square().inverse().matrix().asDiagonal();
    k.v = v.size() == 0 ? Eigen::VectorXd::Zero(x0.size()) : v;
    return k;
}

struct SphereSampling {
    int d = 1;
    std::vector<Eigen::VectorXd> directions;
    std::vector<double> weights; // sum to the area of S^{d-1}
};

// d=1: {+1,-1}; d=2: n uniform angles; d=3: Fibonacci points with equal weights.
inline SphereSampling sphere_directions(int d, std::size_t n = 64) {
    check_dimension(d);
    SphereSampling s{d, {}, {}};
    if (d == 1) {
        s.directions = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
        s.weights = {1.0, 1.0};
        return s;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd c(d);
        if (d == 2) {
            double phi = two_pi * static_cast<double>(i) / static_cast<double>(n);
            c << std::cos(phi), std::sin(phi);
        } else {
            double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
            double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = pi * (3.0 - std::sqrt(5.0)) * static_cast<double>(i);
            c << rho * std::cos(phi), rho * std::sin(phi), z;
        }
        s.directions.push_back(c.normalized());
        s.weights.push_back(sphere_area(d) / static_cast<double>(n));
    }
    return s;
}

template <class Fiber>
struct RadialSymbolField {
    int d = 1;
    std::vector<Eigen::VectorXd> directions;
    std::vector<double> weights;
    std::vector<Fiber> fibers;
};

// Fiber (t, r) -> f(t, r c) of a single term, exact.
inline GaussianTerm fiber_term(const CartesianTerm& k, const Eigen::VectorXd& c) {
    double inv_tau2 = c.dot(k.precision * c);
    double tau2 = 1.0 / inv_tau2;
    double q = tau2 * c.dot(k.precision * k.x0);
    double constant = -0.5 * k.x0.dot(k.precision * k.x0) + 0.5 * q * q * inv_tau2;
    return {k.amp * std::exp(constant), k.t0, q, k.sigma_t, std::sqrt(tau2), k.u, k.v.dot(c)};
}

inline Symbol2D fiber(const CartesianMixture& f, const Eigen::VectorXd& c) {
    Symbol2D out;
    for (const auto& k : f.terms) out.terms.push_back(fiber_term(k, c));
    return out;
}

inline RadialSymbolField<Symbol2D> lift_cartesian(const CartesianMixture& f, const SphereSampling& dirs) {
    check_dimension(f.d);
    if (dirs.d != f.d) fail(Errc::UnsupportedDimension, "direction sampling has the wrong dimension");
    RadialSymbolField<Symbol2D> out{f.d, dirs.directions, dirs.weights, {}};
    for (const auto& c : dirs.directions) out.fibers.push_back(fiber(f, c));
    return out;
}

// Fiberwise star product; fibers are returned as sampled position symbols.
inline RadialSymbolField<SampledPosition> star_cartesian(const CartesianMixture& f, const CartesianMixture& g,
                                                          const SphereSampling& dirs, const StarConfig& cfg = {}) {
    auto lf = lift_cartesian(f, dirs);
    auto lg = lift_cartesian(g, dirs);
    RadialSymbolField<SampledPosition> out{f.d, dirs.directions, dirs.weights, {}};
    out.fibers.resize(dirs.directions.size());
    for (std::size_t i = 0; i < dirs.directions.size(); ++i)
        out.fibers[i] = to_position(star_position(lf.fibers[i], lg.fibers[i], cfg));
    return out;
}

// ---- the group G_d = O(d) x R x (0, inf) -----------------------------------------

struct GdElement {
    Eigen::MatrixXd A;
    double a = 0.0;
    double lambda = 1.0;

    static GdElement identity(int d) { return {Eigen::MatrixXd::Identity(d, d), 0.0, 1.0}; }
};

inline void check_gd(const GdElement& g) {
    if (!(g.lambda > 0)) fail(Errc::InvalidArgument, "dilation must be positive");
    auto d = g.A.rows();
    if (g.A.cols() != d || ((g.A.transpose() * g.A) - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
        fail(Errc::InvalidArgument, "A must be orthogonal");
}

// Product realised by composing the actions: (A1 A2, a1 + a2, lambda1 lambda2).
inline GdElement compose_gd(const GdElement& g1, const GdElement& g2) {
    return {g1.A * g2.A, g1.a + g2.a, g1.lambda * g2.lambda};
}

// rho_g f(t, x) = f(t - a, lambda^{-1} A^{-1} x)
inline CartesianMixture act_gd(const GdElement& g, const CartesianMixture& f) {
    check_gd(g);
    if (g.A.rows() != f.d) fail(Errc::UnsupportedDimension, "group element has the wrong dimension");
    CartesianMixture out = f;
    for (auto& k : out.terms) {
        k.amp *= std::polar(1.0, -k.u * g.a);
        k.t0 += g.a;
        k.x0 = g.lambda * (g.A * k.x0);
        k.precision = (g.A * k.precision * g.A.transpose()) / (g.lambda * g.lambda);
        k.v = (g.A * k.v) / g.lambda;
    }
    return out;
}

} // namespace kappa_weyl
