#include <catch_amalgamated.hpp>

#include "kappa_weyl/functionals.hpp"

using namespace kappa_weyl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Symbol2D gaussian(cplx a, double p, double q, double s, double t, double u = 0, double v = 0) {
    Symbol2D f;
    f.terms.push_back({a, p, q, s, t, u, v});
    return f;
}

// (int dt int_{r>0} dr/r |f|^p) by a plain 2-d trapezoid in (t, r)
double direct_integral(const Symbol2D& f, int p, double r_lo, double r_hi) {
    const double h = 0.005;
    double acc = 0.0;
    for (double t = -8; t <= 8; t += h)
        for (double r = r_lo; r <= r_hi; r += h) acc += std::pow(std::abs(f(t, r)), p) / r;
    return acc * h * h;
}

} // namespace

TEST_CASE("trace and HS constants are pinned") {
    CHECK_THAT(kTraceConstant, WithinAbs(0.15915494309189535, 1e-17));
    CHECK_THAT(kHsConstant, WithinAbs(0.3989422804014327, 1e-16));
}

TEST_CASE("zero symbol") {
    auto z = gaussian(0.0, 0, 3, 1, 0.5);
    auto rep = trace_symbol(z);
    CHECK(rep.symbol_side == cplx(0.0));
    CHECK(rep.operator_side == cplx(0.0));
    CHECK(rep.relative_error == 0.0);
    CHECK(hs_norm(z) == 0.0);
}

TEST_CASE("HS norm: formula, homogeneity and the matrix path") {
    auto f = gaussian(1.0, 0.0, 3.0, 0.5, 0.5);
    double h = hs_norm(f);
    CHECK_THAT(hs_norm(2.0 * f), WithinRel(2.0 * h, 1e-14));
    CHECK_THAT(h, WithinRel(kHsConstant * std::sqrt(direct_integral(f, 2, 0.5, 6.0)), 1e-6));
    CHECK_THAT(h, WithinRel(kernel_kappa(f, default_grid()).hs_norm(), 1e-3));
}

TEST_CASE("trace: symbol side vs matrix trace") {
    auto f = gaussian(1.0, 0.0, 3.0, std::sqrt(0.5), 0.4);
    auto rep = trace_symbol(f);
    CHECK(rep.relative_error < 1e-3);
    double direct = kTraceConstant * direct_integral(f, 1, 0.5, 6.0);
    CHECK_THAT(rep.symbol_side.real(), WithinRel(direct, 1e-6));
    CHECK(std::abs(rep.symbol_side.imag()) < 1e-15);

    // t-odd symbol with a Gaussian r-profile
    auto odd = gaussian(1.0, 1.0, 3.0, 0.6, 0.4) + gaussian(-1.0, -1.0, 3.0, 0.6, 0.4);
    CHECK(std::abs(trace_symbol(odd).symbol_side) < 1e-10);

    // conjugation
    auto g = gaussian({0.5, 0.8}, 0.3, 2.5, 0.7, 0.4, 0.4, 0.2);
    CHECK(std::abs(trace_symbol(conj(g)).symbol_side - std::conj(trace_symbol(g).symbol_side)) < 1e-14);

    // linearity
    auto lin = trace_symbol(f + cplx(0.0, 2.0) * g).symbol_side;
    CHECK(std::abs(lin - (trace_symbol(f).symbol_side + cplx(0.0, 2.0) * trace_symbol(g).symbol_side)) < 1e-13);
}

TEST_CASE("e^{-t^2-(r-3)^2} is not integrable against dr/r at r = 0") {
    auto f = gaussian(1.0, 0.0, 3.0, std::sqrt(0.5), std::sqrt(0.5));
    CHECK_THROWS_MATCHES(trace_symbol(f), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == Errc::DivergentAtOrigin; }));
    FunctionalConfig relaxed;
    relaxed.origin_tol = 1e-2;
    auto rep = trace_symbol(f, default_grid(), relaxed);
    CHECK(rep.relative_error < 1e-3);
}

TEST_CASE("radial trace functional") {
    Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 3.0), sx = Eigen::VectorXd::Constant(1, 0.4);
    CartesianMixture f{1, {cartesian_gaussian(1.0, 0.0, 1.0, x0, sx), cartesian_gaussian(0.5, 0.2, 0.8, -x0, sx)}};
    auto field = lift_cartesian(f, sphere_directions(1));
    cplx expect = trace_integral(field.fibers[0], default_grid()) + trace_integral(field.fibers[1], default_grid());
    CHECK(std::abs(tau_radial(field) - expect) < 1e-14);

    CartesianMixture zero{1, {cartesian_gaussian(0.0, 0.0, 1.0, x0, sx)}};
    CHECK(tau_radial(lift_cartesian(zero, sphere_directions(1))) == cplx(0.0));

    // rotation-invariant ring in d = 2
    CartesianTerm ring;
    ring.amp = 1.0;
    ring.t0 = 0.0;
    ring.sigma_t = 1.0;
    ring.x0 = Eigen::VectorXd::Zero(2);
    ring.precision = Eigen::MatrixXd::Identity(2, 2) / 0.25;
    ring.v = Eigen::VectorXd::Zero(2);
    // difference of centred Gaussians, zero at the origin
    CartesianTerm wide = ring;
    wide.precision = Eigen::MatrixXd::Identity(2, 2) / 4.0;
    wide.amp = 1.0;
    ring.amp = -1.0;
    CartesianMixture inv{2, {wide, ring}};
    auto fi = lift_cartesian(inv, sphere_directions(2, 32));
    cplx single = trace_integral(fi.fibers[0], default_grid());
    CHECK(std::abs(tau_radial(fi) - two_pi * single) < 1e-6 * std::abs(single));
}

TEST_CASE("cartesian prefactors and consistency with the radial trace") {
    CHECK(sphere_area(1) == 2.0);
    CHECK_THAT(sphere_area(2), WithinRel(two_pi, 1e-15));
    CHECK_THAT(sphere_area(3), WithinRel(4.0 * pi, 1e-15));

    Eigen::VectorXd x0(2), sx(2);
    x0 << 3.0, 1.5;
    sx << 0.5, 0.5;
    CartesianMixture f{2, {cartesian_gaussian(1.0, 0.0, 1.0, x0, sx)}};
    cplx tc = tau_cartesian(f, 2);
    cplx tr = tau_radial(lift_cartesian(f, sphere_directions(2, 256)));
    CHECK(std::abs(tc - tr) < 1e-4 * std::abs(tc));
    CHECK_THROWS_AS(tau_cartesian(f, 3), Error);
}

TEST_CASE("cyclicity and positivity") {
    auto f = gaussian(1.0, 0.0, 3.0, 1.0, 0.4);
    auto same = check_trace_properties(f, f);
    CHECK(same.cyclicity_residual == 0.0);

    auto g = gaussian({0.5, 0.3}, 0.4, 2.6, 1.2, 0.5, 0.3, 0.2);
    auto rep = check_trace_properties(f, g);
    CHECK(rep.cyclicity_residual < 1e-4 * rep.scale);
    CHECK(rep.positivity >= -1e-6 * rep.scale);
    CHECK_THAT(rep.positivity, WithinRel(rep.hs_squared, 1e-3));
}

TEST_CASE("singular values") {
    auto grid = GridSpec::make(128, -8.0, 8.0);
    KernelMatrix zero{grid, Eigen::MatrixXcd::Zero(128, 128)};
    for (double s : singular_decay(zero, 10)) CHECK(s == 0.0);

    auto f = gaussian(1.0, 0.0, 3.0, 1.0, 0.5);
    auto K = kernel_kappa(f, grid);
    auto sv = singular_decay(K, 128);
    double ss = 0.0;
    for (std::size_t i = 0; i < sv.size(); ++i) {
        ss += sv[i] * sv[i];
        if (i) CHECK(sv[i] <= sv[i - 1]);
    }
    CHECK_THAT(ss, WithinRel(std::pow(K.hs_norm(), 2), 1e-8));

    Eigen::VectorXcd a(128), b(128);
    for (int i = 0; i < 128; ++i) {
        double s = grid.point(i);
        a(i) = std::exp(-s * s);
        b(i) = std::exp(-(s - 1) * (s - 1)) * std::polar(1.0, s);
    }
    KernelMatrix rank1{grid, a * b.adjoint()};
    auto r1 = singular_decay(rank1, 2);
    CHECK(r1[1] < 1e-12 * r1[0]);
    CHECK_THROWS_AS(singular_decay(K, 129), Error);
}
