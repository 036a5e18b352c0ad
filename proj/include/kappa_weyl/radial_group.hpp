#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/grid.hpp"
#include "kappa_weyl/lattice.hpp"
#include "kappa_weyl/special.hpp"

namespace kappa_weyl {

struct GroupElement {
    double alpha = 0.0;
    double beta = 0.0;
};

inline GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
    double a = g1.alpha + g2.alpha;
    return {a, w(a, g1.alpha) * std::exp(g2.alpha) * g1.beta + w(a, g2.alpha) * g2.beta};
}

inline GroupElement inverse(const GroupElement& g) { return {-g.alpha, -g.beta}; }

inline Eigen::Matrix2d embed_matrix(const GroupElement& g) {
    Eigen::Matrix2d m;
    m << std::exp(g.alpha), 0.0, exprel(g.alpha) * g.beta, 1.0;
    return m;
}

struct HaarData {
    double weight = 1.0;  // (e^alpha - 1)/alpha
    double modular = 1.0; // e^alpha
};

inline HaarData haar(const GroupElement& g) { return {exprel(g.alpha), std::exp(g.alpha)}; }

// Trapezoid rule for int dmu(alpha,beta) phi over box on an n x n lattice.
template <class Phi>
cplx haar_integral(Phi&& phi, const Box& box, std::size_t n = 401) {
    if (n < 2) fail(Errc::InvalidArgument, "need at least two nodes per axis");
    double da = (box.x_hi - box.x_lo) / static_cast<double>(n - 1);
    double db = (box.y_hi - box.y_lo) / static_cast<double>(n - 1);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = box.x_lo + da * static_cast<double>(i);
        double wa = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        double h = exprel(a);
        cplx row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double wb = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            row += wb * cplx(phi(a, box.y_lo + db * static_cast<double>(j)));
        }
        acc += wa * h * row;
    }
    acc *= da * db;
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
        fail(Errc::QuadratureDiverged, "Haar integral is not finite");
    return acc;
}

// |kappa^2 int dmu phi(kappa a, kappa b) - int da db phi(a,b)|, evaluated after the
// substitution (a,b) -> (a,b)/kappa so both terms share one lattice.
template <class Phi>
double scaling_limit_residual(Phi&& phi, double kappa, const Box& box, std::size_t n = 401) {
    if (!(kappa > 0)) fail(Errc::InvalidArgument, "kappa must be positive");
    double da = (box.x_hi - box.x_lo) / static_cast<double>(n - 1);
    double db = (box.y_hi - box.y_lo) / static_cast<double>(n - 1);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = box.x_lo + da * static_cast<double>(i);
        double wa = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        // exprel(x) - 1 without cancellation
        double x = a / kappa;
        double excess = std::abs(x) < 1e-3 ? x * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x / 120.0)))
                                           : exprel(x) - 1.0;
        cplx row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double wb = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            row += wb * cplx(phi(a, box.y_lo + db * static_cast<double>(j)));
        }
        acc += wa * excess * row;
    }
    double r = std::abs(acc) * da * db;
    if (!std::isfinite(r)) fail(Errc::QuadratureDiverged, "scaling-limit integral is not finite");
    return r;
}

// (W(alpha,beta) xi)(s) = e^{i ((1-e^{-alpha})/alpha) beta e^{-s}} xi(s + alpha)
inline StateVector weyl_act(const GroupElement& g, const StateVector& x) {
    StateVector moved = shift(x, g.alpha);
    double c = exprel_neg(g.alpha) * g.beta;
    if (c == 0.0) return moved;
    return multiply_phase(moved, [c](double s) { return c * std::exp(-s); });
}

// e^{i alpha T} e^{i ((e^alpha - 1)/alpha) beta R} applied factor by factor.
inline StateVector weyl_split(double alpha, double beta, const StateVector& x) {
    double c = exprel(alpha) * beta;
    StateVector phased = c == 0.0 ? x : multiply_phase(x, [c](double s) { return c * std::exp(-s); });
    return shift(phased, alpha);
}

} // namespace kappa_weyl
