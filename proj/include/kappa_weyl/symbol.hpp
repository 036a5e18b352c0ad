#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <memory>
#include <mutex>
#include <vector>

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/fft.hpp"
#include "kappa_weyl/grid.hpp"
#include "kappa_weyl/lattice.hpp"
#include "kappa_weyl/parallel.hpp"
#include "kappa_weyl/special.hpp"

namespace kappa_weyl {

// Functions of (t, r): the classical symbols f.
struct PositionDomain {};
// Functions of (alpha, beta): the momentum-space symbols phi.
struct MomentumDomain {};

// Relative magnitude below which Gaussian tails are treated as zero.
inline constexpr double kTail = 1e-13;
inline double tail_radius(double tail = kTail) { return std::sqrt(2.0 * std::log(1.0 / tail)); }

// a * exp(-(x-p)^2/2 sigma^2 - (y-q)^2/2 tau^2) * exp(i(u x + v y))
struct GaussianTerm {
    cplx a = 1.0;
    double p = 0.0, q = 0.0;
    double sigma = 1.0, tau = 1.0;
    double u = 0.0, v = 0.0;

    cplx value(double x, double y) const {
        double dx = (x - p) / sigma, dy = (y - q) / tau;
        return a * std::polar(std::exp(-0.5 * (dx * dx + dy * dy)), u * x + v * y);
    }
};

template <class Domain>
struct GaussianMixture {
    using domain = Domain;
    std::vector<GaussianTerm> terms;

    cplx value(double x, double y) const {
        cplx acc = 0.0;
        for (const auto& t : terms) acc += t.value(x, y);
        return acc;
    }
    cplx operator()(double x, double y) const { return value(x, y); }

    // Fourier transform in the first variable: (2 pi)^{-1/2} int dx e^{-i lam x} (.)
    cplx partial_fourier_t(double lam, double y) const {
        cplx acc = 0.0;
        for (const auto& t : terms) {
            double dl = lam - t.u;
            double dy = (y - t.q) / t.tau;
            double mag = t.sigma * std::exp(-0.5 * (t.sigma * t.sigma * dl * dl + dy * dy));
            acc += t.a * std::polar(mag, t.v * y - dl * t.p);
        }
        return acc;
    }

    // int dy (.)(x, y) e^{i y rho}
    cplx beta_transform(double x, double rho) const {
        cplx acc = 0.0;
        for (const auto& t : terms) {
            double dx = (x - t.p) / t.sigma;
            double k = t.v + rho;
            double mag = sqrt_two_pi * t.tau * std::exp(-0.5 * (dx * dx + t.tau * t.tau * k * k));
            acc += t.a * std::polar(mag, t.u * x + t.q * k);
        }
        return acc;
    }

    // Box outside which every term is below kTail of its amplitude.
    Box support() const {
        Box b;
        double k = tail_radius();
        for (const auto& t : terms)
            b = b.united({t.p - k * t.sigma, t.p + k * t.sigma, t.q - k * t.tau, t.q + k * t.tau});
        return b;
    }

    // Box containing the full Fourier transform's effective support.
    Box spectral_support() const {
        Box b;
        double k = tail_radius();
        for (const auto& t : terms) {
            double ax = std::abs(t.u) + k / t.sigma, ay = std::abs(t.v) + k / t.tau;
            b = b.united({-ax, ax, -ay, ay});
        }
        return b;
    }

    bool is_zero() const {
        return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.a == 0.0; });
    }
};

using Symbol2D = GaussianMixture<PositionDomain>;
using MomentumMixture = GaussianMixture<MomentumDomain>;

template <class D>
GaussianMixture<D> operator+(GaussianMixture<D> a, const GaussianMixture<D>& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
}

template <class D>
GaussianMixture<D> operator*(cplx c, GaussianMixture<D> a) {
    for (auto& t : a.terms) t.a *= c;
    return a;
}

// Exact two-dimensional transforms of a mixture.
inline MomentumMixture fourier(const Symbol2D& f) {
    MomentumMixture out;
    for (const auto& t : f.terms)
        out.terms.push_back({t.a * t.sigma * t.tau * std::polar(1.0, t.u * t.p + t.v * t.q), t.u, t.v,
                             1.0 / t.sigma, 1.0 / t.tau, -t.p, -t.q});
    return out;
}

inline Symbol2D inverse_fourier(const MomentumMixture& phi) {
    Symbol2D out;
    for (const auto& t : phi.terms)
        out.terms.push_back({t.a * t.sigma * t.tau * std::polar(1.0, t.u * t.p + t.v * t.q), -t.u, -t.v,
                             1.0 / t.sigma, 1.0 / t.tau, t.p, t.q});
    return out;
}

// conj(f(-x,-y))
template <class D>
GaussianMixture<D> reflect_conj(const GaussianMixture<D>& f) {
    auto out = f;
    for (auto& t : out.terms) {
        t.a = std::conj(t.a);
        t.p = -t.p;
        t.q = -t.q;
    }
    return out;
}

// f(x,-y)
template <class D>
GaussianMixture<D> flip_second(const GaussianMixture<D>& f) {
    auto out = f;
    for (auto& t : out.terms) {
        t.q = -t.q;
        t.v = -t.v;
    }
    return out;
}

// Pointwise complex conjugate.
template <class D>
GaussianMixture<D> conj(const GaussianMixture<D>& f) {
    auto out = f;
    for (auto& t : out.terms) {
        t.a = std::conj(t.a);
        t.u = -t.u;
        t.v = -t.v;
    }
    return out;
}

// ---- weighted mixtures ------------------------------------------------------

// e^{k x} * ((e^x - 1)/x)^m, a family closed under u, u^{-1} and the group involution.
struct AlphaWeight {
    double k = 0.0;
    int m = 0;
    double operator()(double x) const {
        double r = std::exp(k * x);
        if (m != 0) r *= std::pow(exprel(x), m);
        return r;
    }
    bool trivial() const { return k == 0.0 && m == 0; }
};

struct WeightedMixture {
    using domain = MomentumDomain;
    AlphaWeight weight;
    MomentumMixture mixture;

    cplx value(double a, double b) const { return weight(a) * mixture.value(a, b); }
    cplx operator()(double a, double b) const { return value(a, b); }
    cplx beta_transform(double a, double rho) const { return weight(a) * mixture.beta_transform(a, rho); }
    Box support() const { return mixture.support(); }
    Box spectral_support() const { return mixture.spectral_support(); }
};

// ---- sampled symbols ----------------------------------------------------------

struct Table2D {
    Lattice1D ax, ay;
    std::vector<cplx> v;

    cplx at(std::size_t i, std::size_t j) const { return v[i * ay.size + j]; }

    cplx eval(double x, double y) const {
        auto sx = make_stencil(ax, x);
        if (!sx.inside) return 0.0;
        auto sy = make_stencil(ay, y);
        if (!sy.inside) return 0.0;
        cplx acc = 0.0;
        for (std::size_t a = 0; a < kInterpPoints; ++a) {
            if (sx.w[a] == 0.0) continue;
            const cplx* row = &v[(sx.first + a) * ay.size + sy.first];
            cplx r = 0.0;
            for (std::size_t b = 0; b < kInterpPoints; ++b) r += sy.w[b] * row[b];
            acc += sx.w[a] * r;
        }
        return acc;
    }

    cplx eval_row(std::size_t i, double y) const {
        auto sy = make_stencil(ay, y);
        if (!sy.inside) return 0.0;
        const cplx* row = &v[i * ay.size + sy.first];
        cplx r = 0.0;
        for (std::size_t b = 0; b < kInterpPoints; ++b) r += sy.w[b] * row[b];
        return r;
    }
};

// Zero-padding factors for the lazily built partial-transform tables.
inline constexpr std::size_t kPositionTablePad = 4;
inline constexpr std::size_t kMomentumTablePad = 8;

template <class Domain>
class SampledSymbol {
public:
    using domain = Domain;

    SampledSymbol() : SampledSymbol(Lattice1D::centered(1.0, 5), Lattice1D::centered(1.0, 5), {}) {}

    SampledSymbol(Lattice1D ax, Lattice1D ay, std::vector<cplx> values)
        : d_(std::make_shared<Data>()) {
        if (values.empty()) values.assign(ax.size * ay.size, 0.0);
        if (values.size() != ax.size * ay.size) fail(Errc::BadShape, "sample count does not match lattice");
        if (ax.size < kInterpPoints || ay.size < kInterpPoints)
            fail(Errc::BadShape, "sampled symbols need at least 10 nodes per axis");
        d_->samples = Table2D{ax, ay, std::move(values)};
    }

    const Lattice1D& x_lattice() const { return d_->samples.ax; }
    const Lattice1D& y_lattice() const { return d_->samples.ay; }
    const std::vector<cplx>& values() const { return d_->samples.v; }
    cplx at(std::size_t i, std::size_t j) const { return d_->samples.at(i, j); }

    cplx value(double x, double y) const { return d_->samples.eval(x, y); }
    cplx operator()(double x, double y) const { return value(x, y); }
    // Interpolation along the second variable on lattice row i.
    cplx row_value(std::size_t i, double y) const { return d_->samples.eval_row(i, y); }

    Box support() const { return {x_lattice().lo(), x_lattice().hi(), y_lattice().lo(), y_lattice().hi()}; }
    Box spectral_support() const {
        double ax = pi / x_lattice().step, ay = pi / y_lattice().step;
        return {-ax, ax, -ay, ay};
    }

    cplx partial_fourier_t(double lam, double r) const
        requires std::same_as<Domain, PositionDomain>
    {
        return table().eval(lam, r);
    }

    cplx beta_transform(double a, double rho) const
        requires std::same_as<Domain, MomentumDomain>
    {
        return table().eval(a, rho);
    }

    bool is_zero() const {
        return std::all_of(values().begin(), values().end(), [](cplx c) { return c == 0.0; });
    }

private:
    struct Data {
        Table2D samples;
        std::once_flag once;
        Table2D table;
    };

    const Table2D& table() const {
        std::call_once(d_->once, [this] { d_->table = build_table(); });
        return d_->table;
    }

    Table2D build_table() const {
        const auto& s = d_->samples;
        if constexpr (std::is_same_v<Domain, PositionDomain>) {
            std::size_t m = next_power_of_two(s.ax.size) * kPositionTablePad;
            auto arr = SampledArray::zeros({Axis::make(s.ax.origin, s.ax.step, m), Axis::make(s.ay.origin, s.ay.step, s.ay.size)});
            std::copy(s.v.begin(), s.v.end(), arr.data.begin());
            std::size_t axis0[] = {0};
            arr = fourier(std::move(arr), axis0);
            return {Lattice1D{arr.axes[0].origin, arr.axes[0].step, m}, s.ay, std::move(arr.data)};
        } else {
            std::size_t m = next_power_of_two(s.ay.size) * kMomentumTablePad;
            auto arr = SampledArray::zeros({Axis::make(s.ax.origin, s.ax.step, s.ax.size), Axis::make(s.ay.origin, s.ay.step, m)});
            for (std::size_t i = 0; i < s.ax.size; ++i)
                std::copy_n(&s.v[i * s.ay.size], s.ay.size, &arr.data[i * m]);
            std::size_t axis1[] = {1};
            arr = inverse_fourier(std::move(arr), axis1);
            for (auto& c : arr.data) c *= sqrt_two_pi;
            return {s.ax, Lattice1D{arr.axes[1].origin, arr.axes[1].step, m}, std::move(arr.data)};
        }
    }

    std::shared_ptr<Data> d_;
};

using SampledPosition = SampledSymbol<PositionDomain>;
using SampledMomentum = SampledSymbol<MomentumDomain>;

// ---- concepts -----------------------------------------------------------------

template <class S>
concept EvaluableSymbol = requires(const S& s, double a, double b) {
    { s.value(a, b) } -> std::convertible_to<cplx>;
    { s.support() } -> std::convertible_to<Box>;
};

template <class S>
concept PositionSymbol = EvaluableSymbol<S> && std::same_as<typename S::domain, PositionDomain> &&
                         requires(const S& s, double a, double b) {
                             { s.partial_fourier_t(a, b) } -> std::convertible_to<cplx>;
                         };

template <class S>
concept MomentumSymbol = EvaluableSymbol<S> && std::same_as<typename S::domain, MomentumDomain> &&
                         requires(const S& s, double a, double b) {
                             { s.beta_transform(a, b) } -> std::convertible_to<cplx>;
                         };

// ---- sampling and conversions -------------------------------------------------

template <class D, EvaluableSymbol S>
SampledSymbol<D> sample(const S& s, const Lattice1D& ax, const Lattice1D& ay) {
    std::vector<cplx> v(ax.size * ay.size);
    parallel_for(ax.size, [&](std::size_t i) {
        double x = ax.at(i);
        for (std::size_t j = 0; j < ay.size; ++j) v[i * ay.size + j] = s.value(x, ay.at(j));
    });
    return SampledSymbol<D>(ax, ay, std::move(v));
}

template <MomentumSymbol S>
SampledMomentum sample_momentum(const S& s, const Lattice1D& ax, const Lattice1D& ay) {
    return sample<MomentumDomain>(s, ax, ay);
}

template <PositionSymbol S>
SampledPosition sample_position(const S& s, const Lattice1D& ax, const Lattice1D& ay) {
    return sample<PositionDomain>(s, ax, ay);
}

namespace detail {

template <class From, class To>
SampledSymbol<To> transform_sampled(const SampledSymbol<From>& s, int sign) {
    const auto& ax = s.x_lattice();
    const auto& ay = s.y_lattice();
    std::size_t mx = next_power_of_two(ax.size + 1), my = next_power_of_two(ay.size + 1);
    auto arr = SampledArray::zeros({Axis::make(ax.origin, ax.step, mx), Axis::make(ay.origin, ay.step, my)});
    for (std::size_t i = 0; i < ax.size; ++i)
        for (std::size_t j = 0; j < ay.size; ++j) arr.data[i * my + j] = s.at(i, j);
    arr = sign < 0 ? fourier(std::move(arr)) : inverse_fourier(std::move(arr));
    return SampledSymbol<To>(Lattice1D{arr.axes[0].origin, arr.axes[0].step, mx},
                             Lattice1D{arr.axes[1].origin, arr.axes[1].step, my}, std::move(arr.data));
}

} // namespace detail

// Two-dimensional transforms of sampled symbols; results live on centered power-of-two lattices.
inline SampledMomentum to_momentum(const SampledPosition& f) {
    return detail::transform_sampled<PositionDomain, MomentumDomain>(f, -1);
}

inline SampledPosition to_position(const SampledMomentum& phi) {
    return detail::transform_sampled<MomentumDomain, PositionDomain>(phi, +1);
}

template <class D>
SampledSymbol<D> scaled(const SampledSymbol<D>& s, cplx c) {
    auto v = s.values();
    for (auto& x : v) x *= c;
    return SampledSymbol<D>(s.x_lattice(), s.y_lattice(), std::move(v));
}

} // namespace kappa_weyl
