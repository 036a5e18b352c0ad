#include <catch_amalgamated.hpp>

#include <random>

#include "kappa_weyl/check/oracles.hpp"
#include "kappa_weyl/quantization.hpp"

using namespace kappa_weyl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Symbol2D gaussian(cplx a, double p, double q, double s, double t, double u = 0, double v = 0) {
    Symbol2D f;
    f.terms.push_back({a, p, q, s, t, u, v});
    return f;
}

const GridSpec kGrid = GridSpec::make(512, -10.0, 10.0);

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("zero symbol gives a zero kernel") {
    auto z = gaussian(0.0, 0, 3, 1, 0.5);
    CHECK(max_abs(kernel_kappa(z, kGrid).entries) == 0.0);
    CHECK(max_abs(kernel_ccr(z, kGrid).entries) == 0.0);
    auto g = kappa_to_ccr(z);
    CHECK(g.partial_fourier_t(0.3, 0.2) == cplx(0.0));
}

TEST_CASE("kernel constant is pinned") {
    CHECK(kKernelConstant == inv_sqrt_two_pi);
    CHECK_THAT(kKernelConstant, WithinAbs(0.3989422804014327, 1e-16));
}

TEST_CASE("kernel entries follow the closed form") {
    auto f = gaussian({1.0, 0.2}, 0.3, 2.0, 1.0, 0.6, 0.0, 0.4);
    auto K = kernel_kappa(f, kGrid);
    for (auto [i, j] : {std::pair{300, 300}, {300, 310}, {280, 262}}) {
        double s = kGrid.point(i), u = kGrid.point(j);
        double dd = i == j ? std::exp(-s) : (std::exp(-s) - std::exp(-u)) / (u - s);
        CHECK(std::abs(K.entries(i, j) - inv_sqrt_two_pi * f.partial_fourier_t(u - s, dd)) < 1e-14);
    }
}

TEST_CASE("only r > 0 matters") {
    auto f = gaussian(1.0, 0.0, 3.0, 1.0, 0.3);
    auto f2 = f + gaussian(0.7, 0.5, -3.0, 1.2, 0.3);
    auto d = relative_frobenius(kernel_kappa(f, kGrid), kernel_kappa(f2, kGrid));
    CHECK(d < 1e-12);
    // distinct even parts on r > 0 give distinct kernels
    auto f3 = gaussian(1.0, 0.0, 3.2, 1.0, 0.3);
    CHECK(relative_frobenius(kernel_kappa(f, kGrid), kernel_kappa(f3, kGrid)) > 1e-2);
}

TEST_CASE("kernel agrees with the Weyl-integral path") {
    auto f = gaussian(1.0, 0.2, 3.0, 1.2, 0.4, 0.0, 0.3);
    auto grid = default_grid();
    auto x = make_state(grid, GaussianGen{1.5, 0.5, 0.0});
    auto y = kernel_kappa(f, grid).apply(x);
    auto y0 = check::weyl_integral_apply(fourier(f), x);
    CHECK(check::relative_l2(y, y0) < 1e-4);
    StateVector raw = y;
    for (auto& v : raw.values) v /= kKernelConstant;
    CHECK_THAT(std::abs(check::fit_constant({raw}, {y0})), WithinAbs(inv_sqrt_two_pi, 1e-6));
}

TEST_CASE("CCR kernel of a real symbol is self-adjoint") {
    auto g = gaussian(1.0, 0.3, 0.5, 0.8, 1.1);
    auto H = kernel_ccr(g, kGrid);
    CHECK(max_abs(H.entries - H.entries.adjoint()) < 1e-10 * max_abs(H.entries));
    auto f = gaussian(1.0, 0.0, 3.0, 1.0, 0.5) + gaussian(1.0, 0.0, -3.0, 1.0, 0.5);
    auto K = kernel_kappa(f, kGrid);
    CHECK(max_abs(K.entries - K.entries.adjoint()) < 1e-10 * max_abs(K.entries));
}

TEST_CASE("CCR kernel agrees with the CCR Weyl-integral path") {
    auto g = gaussian(1.0, 0.3, 1.5, 0.8, 1.1, 0.0, 0.2);
    auto grid = default_grid();
    auto x = make_state(grid, GaussianGen{1.0, 0.6, 0.8});
    auto y = kernel_ccr(g, grid).apply(x);
    auto y0 = check::ccr_integral_apply(fourier(g), x);
    CHECK(check::relative_l2(y, y0) < 1e-4);
}

TEST_CASE("kappa to CCR bridge") {
    auto f = gaussian(1.0, 0.2, 3.0, 1.0, 0.5, 0.0, 0.3);
    auto g = kappa_to_ccr_sampled(f, Lattice1D{-6.0, 0.02, 1101});
    CHECK(relative_frobenius(kernel_ccr(g, kGrid), kernel_kappa(f, kGrid)) < 1e-4);

    // narrow in t: the lambda = 0 fibre is the r-profile read at e^{-q}
    auto h = gaussian(1.0, 0.0, 2.0, 0.05, 0.5);
    auto b = kappa_to_ccr(h);
    for (double q : {-1.0, -0.5, 0.0}) {
        double r = std::exp(-q);
        CHECK(std::abs(b.partial_fourier_t(0.0, q) - h.partial_fourier_t(0.0, r)) < 1e-15);
    }
}

TEST_CASE("pi_+ of the Fourier transform is 2 pi times the kernel") {
    auto f = gaussian({0.8, 0.3}, -0.2, 2.5, 1.0, 0.6, 0.0, 0.2);
    auto P = kernel_pi(fourier(f), kGrid);
    auto K = kernel_kappa(f, kGrid);
    P.entries /= two_pi;
    CHECK(relative_frobenius(P, K) < 1e-10);
}

TEST_CASE("pi_- is pi_+ composed with digamma") {
    MomentumMixture phi;
    phi.terms.push_back({1.0, 0.2, 0.4, 0.8, 1.0, 0.0, -0.3});
    auto m = kernel_pi(phi, kGrid, -1);
    auto p = kernel_pi(flip_second(phi), kGrid, +1);
    CHECK(relative_frobenius(m, p) < 1e-12);
}

TEST_CASE("operator product matches the star product") {
    auto f = gaussian(1.0, 0.0, 3.0, 1.0, 0.5);
    auto g = gaussian({0.5, 0.2}, -0.3, 2.5, 1.0, 0.5, 0.0, 0.4);
    auto prod = kernel_kappa(f, kGrid).then(kernel_kappa(g, kGrid));
    auto kh = kernel_pi(star_position(f, g), kGrid);
    kh.entries /= two_pi;
    CHECK(relative_frobenius(kh, prod) < 1e-3);
}

TEST_CASE("cartesian lift") {
    Eigen::VectorXd x0(2), sx(2);
    x0 << 2.0, 1.0;
    sx << 0.5, 0.8;
    CartesianMixture f{2, {cartesian_gaussian(1.0, 0.3, 1.0, x0, sx)}};
    auto field = lift_cartesian(f, sphere_directions(2, 8));
    REQUIRE(field.fibers.size() == 8);
    for (std::size_t k = 0; k < 8; ++k)
        for (double r : {0.5, 1.7, 3.0}) {
            Eigen::VectorXd x = r * field.directions[k];
            CHECK(std::abs(field.fibers[k](0.2, r) - f.value(0.2, x)) < 1e-14);
        }

    Eigen::VectorXd z = Eigen::VectorXd::Zero(2), iso = Eigen::VectorXd::Constant(2, 0.7);
    CartesianMixture g{2, {cartesian_gaussian(1.0, 0.0, 1.0, z, iso)}};
    auto gf = lift_cartesian(g, sphere_directions(2, 16));
    for (std::size_t k = 1; k < 16; ++k)
        CHECK(std::abs(gf.fibers[k](0.1, 1.3) - gf.fibers[0](0.1, 1.3)) < 1e-14);

    CartesianMixture one{1, {cartesian_gaussian(1.0, 0.0, 1.0, Eigen::VectorXd::Constant(1, 2.0),
                                                Eigen::VectorXd::Constant(1, 0.5))}};
    auto d1 = lift_cartesian(one, sphere_directions(1));
    CHECK(std::abs(d1.fibers[1](0.0, 2.0) - one.value(0.0, Eigen::VectorXd::Constant(1, -2.0))) < 1e-15);
    CHECK_THROWS_AS(sphere_directions(4), Error);
}

TEST_CASE("G_d action") {
    Eigen::VectorXd x0(3), sx(3);
    x0 << 1.0, -0.5, 2.0;
    sx << 0.6, 0.9, 1.2;
    CartesianMixture f{3, {cartesian_gaussian({1.0, 0.5}, 0.2, 0.8, x0, sx, 0.3)}};
    auto id = act_gd(GdElement::identity(3), f);
    Eigen::VectorXd x(3);
    x << 0.4, 0.1, 1.5;
    CHECK(std::abs(id.value(0.3, x) - f.value(0.3, x)) < 1e-15);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> N;
    auto random_element = [&] {
        Eigen::MatrixXd m(3, 3);
        for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = N(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        return GdElement{qr.householderQ() * Eigen::MatrixXd::Identity(3, 3), N(rng), std::exp(0.3 * N(rng))};
    };
    for (int k = 0; k < 5; ++k) {
        auto g1 = random_element(), g2 = random_element();
        auto lhs = act_gd(compose_gd(g1, g2), f);
        auto rhs = act_gd(g1, act_gd(g2, f));
        Eigen::VectorXd y(3);
        y << N(rng), N(rng), N(rng);
        double t = N(rng);
        CHECK(std::abs(lhs.value(t, y) - rhs.value(t, y)) < 1e-12);
        // rho_g f(t, x) = f(t - a, lambda^{-1} A^{-1} x)
        Eigen::VectorXd back = g1.A.transpose() * y / g1.lambda;
        CHECK(std::abs(act_gd(g1, f).value(t, y) - f.value(t - g1.a, back)) < 1e-12);
    }
}

TEST_CASE("dilation covariance in d = 1") {
    double lambda = 1.6;
    CartesianMixture f{1, {cartesian_gaussian(1.0, 0.1, 1.0, Eigen::VectorXd::Constant(1, 3.0),
                                              Eigen::VectorXd::Constant(1, 0.4))}};
    GdElement g{Eigen::MatrixXd::Identity(1, 1), 0.0, lambda};
    auto plus = Eigen::VectorXd::Constant(1, 1.0);
    auto K = kernel_kappa(fiber(f, plus), kGrid);
    auto Kg = kernel_kappa(fiber(act_gd(g, f), plus), kGrid);
    CHECK(relative_frobenius(conjugate_by_shift(K, std::log(lambda)), Kg) < 1e-4);
}
