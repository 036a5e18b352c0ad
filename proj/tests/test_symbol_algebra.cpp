#include <catch_amalgamated.hpp>

#include "kappa_weyl/radial_group.hpp"
#include "kappa_weyl/symbol_algebra.hpp"

using namespace kappa_weyl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MomentumMixture gauss(cplx a, double p, double q, double s, double t, double u = 0, double v = 0) {
    MomentumMixture m;
    m.terms.push_back({a, p, q, s, t, u, v});
    return m;
}

// int dalpha' dbeta' w(a-a',a) phi1(a',b') phi2(a-a', w(a-a',a) b - w(a'-a,a') b'), plain trapezoid
template <class S1, class S2>
cplx star_brute(const S1& p1, const S2& p2, double a, double b) {
    const double h = 0.04;
    cplx acc = 0.0;
    for (double x = -7; x <= 7; x += h)
        for (double y = -7; y <= 7; y += h) {
            double wa = w(a - x, a);
            acc += wa * p1(x, y) * p2(a - x, wa * b - w(x - a, x) * y);
        }
    return acc * h * h;
}

// int dmu(h) phi1(h) phi2(h^{-1} g), dmu = (e^a - 1)/a da db
template <class S1, class S2>
cplx group_brute(const S1& p1, const S2& p2, double a, double b) {
    const double h = 0.04;
    cplx acc = 0.0;
    for (double x = -7; x <= 7; x += h)
        for (double y = -7; y <= 7; y += h) {
            auto k = compose(inverse({x, y}), {a, b});
            acc += exprel(x) * p1(x, y) * p2(k.alpha, k.beta);
        }
    return acc * h * h;
}

} // namespace

TEST_CASE("star product of zero is zero") {
    auto phi = gauss(1.0, 0, 0, 1, 1);
    auto z = star_momentum(phi, gauss(0.0, 0, 0, 1, 1));
    for (auto v : z.values()) CHECK(v == cplx(0.0));
}

TEST_CASE("star product matches the twisted convolution integral") {
    auto p1 = gauss({1.0, 0.2}, 0.3, -0.2, 0.8, 1.0, 0.0, 0.5);
    auto p2 = gauss(0.7, -0.2, 0.4, 1.0, 0.7, 0.3, 0.0);
    auto s = star_momentum(p1, p2);
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, -0.6}, {-1.0, 1.2}, {1.5, 0.4}}) {
        cplx brute = star_brute(p1, p2, a, b);
        INFO("alpha=" << a << " beta=" << b);
        CHECK(std::abs(s(a, b) - brute) < 1e-6 * (1.0 + std::abs(brute)));
    }
}

TEST_CASE("group convolution matches the Haar integral") {
    auto p1 = gauss(1.0, 0.2, 0.0, 0.7, 0.9);
    auto p2 = gauss({0.3, 0.5}, -0.1, 0.3, 0.8, 0.8, 0.0, -0.4);
    auto s = convolve_group(p1, p2);
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.4, 0.5}, {-0.8, -0.3}}) {
        cplx brute = group_brute(p1, p2, a, b);
        CHECK(std::abs(s(a, b) - brute) < 1e-6 * (1.0 + std::abs(brute)));
    }
    auto z = convolve_group(p1, gauss(0.0, 0, 0, 1, 1));
    for (auto v : z.values()) CHECK(v == cplx(0.0));
}

TEST_CASE("involution of the star algebra") {
    auto phi = gauss({1.0, -0.5}, 0.4, -0.3, 0.9, 1.1, 0.2, 0.7);
    auto twice = involution_B(involution_B(phi));
    auto once = involution_B(phi);
    for (auto [a, b] : {std::pair{0.1, 0.2}, {-1.0, 0.5}}) {
        CHECK(std::abs(twice(a, b) - phi(a, b)) < 1e-15);
        CHECK(std::abs(once(a, b) - std::conj(phi(-a, -b))) < 1e-15);
    }
    auto even = gauss(1.0, 0, 0, 0.8, 1.3);
    auto e = involution_B(even);
    CHECK(std::abs(e(0.3, -0.4) - even(0.3, -0.4)) < 1e-15);
    CHECK_THAT(l1_norm(once), WithinRel(l1_norm(phi), 1e-12));
}

TEST_CASE("dagger and u are isometries") {
    auto phi = gauss({0.6, 0.8}, 0.3, -0.5, 0.7, 1.0, 0.4, 0.0);
    auto d = dagger_group(phi);
    CHECK(std::abs(d(0.4, 0.1) - std::exp(-0.4) * std::conj(phi(-0.4, -0.1))) < 1e-15);
    CHECK_THAT(l1_haar_norm(d), WithinRel(l1_haar_norm(phi), 1e-8));
    auto u = iso_u(phi);
    CHECK(std::abs(u(0.7, 0.2) - 0.7 / std::expm1(0.7) * phi(0.7, 0.2)) < 1e-15);
    CHECK_THAT(l1_haar_norm(u), WithinRel(l1_norm(phi), 1e-8));
    auto back = iso_u_inverse(u);
    CHECK(std::abs(back(-1.2, 0.3) - phi(-1.2, 0.3)) < 1e-15);
}

TEST_CASE("digamma flips the second argument") {
    auto phi = gauss(1.0, 0.2, 0.5, 1, 1, 0, 0.3);
    auto f = digamma(phi);
    CHECK(std::abs(f(0.1, 0.4) - phi(0.1, -0.4)) < 1e-15);
}

TEST_CASE("even projections") {
    // position profile even in r: fourier of e^{-t^2/8}(e^{-(r-3)^2/0.32} + e^{-(r+3)^2/0.32})
    Symbol2D f;
    f.terms.push_back({1.0, 0.0, 3.0, 2.0, 0.4, 0.0, 0.0});
    f.terms.push_back({1.0, 0.0, -3.0, 2.0, 0.4, 0.0, 0.0});
    auto phi = fourier(f);
    auto ep = project_even(phi, +1);
    CHECK(l1_distance(ep, phi) < 1e-8 * l1_norm(phi));
    auto twice = project_even(ep, +1);
    CHECK(l1_distance(twice, ep) < 1e-8 * l1_norm(phi));

    // one-sided profile: E+ keeps the r > 0 half, E- the r < 0 half
    Symbol2D g;
    g.terms.push_back({1.0, 0.0, 3.0, 2.0, 0.4, 0.0, 0.0});
    g.terms.push_back({0.5, 0.0, -3.5, 2.0, 0.4, 0.0, 0.0});
    auto gp = project_even(fourier(g), +1);
    auto gm = project_even(fourier(g), -1);
    auto expect_p = fourier(f);
    Symbol2D lower;
    lower.terms.push_back(g.terms[1]);
    auto expect_m = fourier(flip_second(lower) + lower);
    CHECK(l1_distance(gp, expect_p) < 1e-8 * l1_norm(expect_p));
    CHECK(l1_distance(gm, expect_m) < 1e-8 * l1_norm(expect_m));
}

TEST_CASE("trivial character") {
    auto phi = gauss({1.0, 0.3}, 0.2, -0.4, 0.9, 0.8, 0.1, 0.6);
    double t = 0.7;
    CHECK(trivial_character(gauss(0.0, 0, 0, 1, 1), t) == cplx(0.0));
    CHECK(std::abs(trivial_character(involution_B(phi), t) - std::conj(trivial_character(phi, t))) < 1e-14);

    // closed form vs the inverse transform at (t, 0)
    cplx direct = 0.0;
    const double h = 0.02;
    for (double a = -8; a <= 8; a += h)
        for (double b = -8; b <= 8; b += h) direct += phi(a, b) * std::polar(1.0, a * t);
    direct *= h * h;
    CHECK(std::abs(trivial_character(phi, t) - direct) < 1e-10);

    auto psi = gauss(0.8, -0.3, 0.2, 1.0, 1.0, 0.0, -0.5);
    cplx lhs = trivial_character(star_momentum(phi, psi), t);
    cplx rhs = trivial_character(phi, t) * trivial_character(psi, t);
    CHECK(std::abs(lhs - rhs) < 1e-6 * std::abs(rhs));
}
