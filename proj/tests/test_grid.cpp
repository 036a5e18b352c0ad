#include <catch_amalgamated.hpp>

#include <random>

#include "kappa_weyl/grid.hpp"

using namespace kappa_weyl;
using Catch::Matchers::WithinAbs;

TEST_CASE("grid spec validation") {
    CHECK_NOTHROW(GridSpec::make(1024, -12, 12));
    CHECK_THROWS_AS(GridSpec::make(1000, -12, 12), Error);
    CHECK_THROWS_AS(GridSpec::make(1024, 1, 12), Error);
    auto g = default_grid();
    CHECK(g.step() == 24.0 / 1024.0);
}

TEST_CASE("make_state catalog") {
    auto g = default_grid();
    auto gauss = make_state(g, GaussianGen{0.0, 1.0});
    CHECK_THAT(l2_norm(gauss), WithinAbs(1.0, 1e-12));

    auto g10 = GridSpec::make(1024, -10, 10);
    auto bump = make_state(g10, BumpGen{-1.0, 1.0});
    for (std::size_t i = 0; i < g10.n_points; ++i)
        if (std::abs(g10.point(i)) >= 1.0) CHECK(bump.values[i] == 0.0);

    try {
        make_state(g10, GaussianGen{9.9, 1.0});
        FAIL("expected EdgeLeak");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EdgeLeak);
    }
    try {
        make_state(g, BumpGen{1e-3, 2e-3});
        FAIL("expected NonNormalizable");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonNormalizable);
    }
}

TEST_CASE("inner product") {
    auto g = default_grid();
    auto a = make_state(g, GaussianGen{0.3, 1.1, 0.7});
    auto b = make_state(g, HermiteGen{2, -0.4, 0.9});
    CHECK_THAT(inner(a, a).real(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(inner(a, a).imag(), WithinAbs(0.0, 1e-15));
    auto ab = inner(a, b), ba = inner(b, a);
    CHECK_THAT(std::abs(ab - std::conj(ba)), WithinAbs(0.0, 1e-15));

    auto h0 = make_state(g, HermiteGen{0, 0.0, 1.0});
    auto h1 = make_state(g, HermiteGen{1, 0.0, 1.0});
    CHECK(std::abs(inner(h0, h1)) < 1e-10);
    // orthonormality persists for higher orders
    auto h3 = make_state(g, HermiteGen{3, 0.0, 1.0});
    auto h5 = make_state(g, HermiteGen{5, 0.0, 1.0});
    CHECK(std::abs(inner(h3, h5)) < 1e-10);

    auto other = make_state(GridSpec::make(512, -12, 12), GaussianGen{});
    CHECK_THROWS_AS(inner(a, other), Error);
}

TEST_CASE("shift") {
    auto g = default_grid();
    auto x = make_state(g, GaussianGen{0.0, 1.0});
    auto same = shift(x, 0.0);
    CHECK(same.values == x.values);

    auto back = shift(shift(x, 1.37), -1.37);
    double err = 0;
    for (std::size_t i = 0; i < g.n_points; ++i) err = std::max(err, std::abs(back.values[i] - x.values[i]));
    CHECK(err < 1e-10);

    auto moved = shift(x, 2.0);
    auto expect = make_state(g, GaussianGen{-2.0, 1.0});
    err = 0;
    for (std::size_t i = 0; i < g.n_points; ++i) err = std::max(err, std::abs(moved.values[i] - expect.values[i]));
    CHECK(err < 1e-8);
    CHECK_THAT(l2_norm(moved), WithinAbs(1.0, 1e-10));

    CHECK_THROWS_AS(shift(x, 0.41 * g.length()), Error);
}

TEST_CASE("multiply_phase") {
    auto g = default_grid();
    auto x = make_state(g, HermiteGen{1, 0.5, 1.0});
    std::vector<double> zero(g.n_points, 0.0);
    CHECK(multiply_phase(x, zero).values == x.values);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-10, 10);
    std::vector<double> theta(g.n_points);
    for (auto& t : theta) t = U(rng);
    auto y = multiply_phase(x, theta);
    for (std::size_t i = 0; i < g.n_points; ++i)
        CHECK_THAT(std::abs(y.values[i]), WithinAbs(std::abs(x.values[i]), 1e-15));
    CHECK_THAT(l2_norm(y), WithinAbs(1.0, 1e-12));

    CHECK_THROWS_AS(multiply_phase(x, std::vector<double>(3)), Error);
}

TEST_CASE("catalog states keep their norm under shift and phase") {
    auto g = default_grid();
    std::vector<Generator> gens = {GaussianGen{1, 0.7, 2}, BumpGen{-2, 3}, HermiteGen{4, 0, 1.3}};
    for (const auto& gen : gens) {
        auto x = make_state(g, gen);
        CHECK_THAT(l2_norm(shift(x, -3.3)), WithinAbs(1.0, 1e-10));
        CHECK_THAT(l2_norm(multiply_phase(x, [](double s) { return std::exp(-s); })), WithinAbs(1.0, 1e-10));
    }
}

TEST_CASE("continuous Fourier transform convention") {
    std::size_t n = 256;
    double h = 0.1;
    auto arr = SampledArray::zeros({Axis::make(-12.8, h, n)});
    for (std::size_t j = 0; j < n; ++j) {
        double t = arr.axes[0].at(j);
        arr.data[j] = std::exp(-0.5 * t * t);
    }
    auto hat = fourier(arr);
    double err = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double lam = hat.axes[0].at(k);
        err = std::max(err, std::abs(hat.data[k] - std::exp(-0.5 * lam * lam)));
    }
    CHECK(err < 1e-8);

    // off-centre lattice, shifted Gaussian: e^{-(t-1)^2/2} -> e^{-i lam} e^{-lam^2/2}
    auto off = SampledArray::zeros({Axis::make(-10.0, h, n)});
    for (std::size_t j = 0; j < n; ++j) {
        double t = off.axes[0].at(j) - 1.0;
        off.data[j] = std::exp(-0.5 * t * t);
    }
    auto offhat = fourier(off);
    err = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double lam = offhat.axes[0].at(k);
        err = std::max(err, std::abs(offhat.data[k] - std::polar(std::exp(-0.5 * lam * lam), -lam)));
    }
    CHECK(err < 1e-8);
}

TEST_CASE("Fourier round trip and Parseval in two dimensions") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N01;
    auto arr = SampledArray::zeros({Axis::make(-3.0, 0.2, 32), Axis::make(1.0, 0.05, 64)});
    for (auto& c : arr.data) c = {N01(rng), N01(rng)};
    auto hat = fourier(arr);
    auto back = inverse_fourier(hat);
    double err = 0, e1 = 0, e2 = 0;
    for (std::size_t i = 0; i < arr.data.size(); ++i) {
        err = std::max(err, std::abs(back.data[i] - arr.data[i]));
        e1 += std::norm(arr.data[i]);
        e2 += std::norm(hat.data[i]);
    }
    CHECK(err < 1e-10);
    CHECK(back.axes[1].origin == Catch::Approx(1.0));
    e1 *= 0.2 * 0.05;
    e2 *= hat.axes[0].step * hat.axes[1].step;
    CHECK_THAT(e1 - e2, WithinAbs(0.0, 1e-10 * e1));

    std::size_t bad_axes[] = {0};
    auto odd = SampledArray::zeros({Axis::make(0, 1, 30)});
    CHECK_THROWS_AS(fourier(odd, bad_axes), Error);
}
