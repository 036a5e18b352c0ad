#pragma once

#include <cmath>
#include <numbers>

namespace kappa_weyl {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
// (2 pi)^{-1/2}
inline constexpr double inv_sqrt_two_pi = 0.39894228040143267794;
inline constexpr double sqrt_two_pi = 2.50662827463100050242;

// (e^x - 1)/x, equal to 1 at x = 0.
inline double exprel(double x) {
    if (std::abs(x) < 1e-6) return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
    return std::expm1(x) / x;
}

// (1 - e^{-x})/x
inline double exprel_neg(double x) { return exprel(-x); }

// sinh(x)/x
inline double sinhc(double x) {
    if (std::abs(x) < 1e-5) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

// w(a, b) = a (e^b - 1) / (b (e^a - 1))
inline double w(double a, double b) { return exprel(b) / exprel(a); }

// (e^{-s} - e^{-u})/(u - s)
inline double divided_exp(double s, double u) { return std::exp(-s) * exprel_neg(u - s); }

// Surface measure of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
inline double sphere_area(int d) {
    switch (d) {
    case 1: return 2.0;
    case 2: return two_pi;
    case 3: return 4.0 * pi;
    default: return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
    }
}

} // namespace kappa_weyl
