#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/fft.hpp"
#include "kappa_weyl/lattice.hpp"
#include "kappa_weyl/parallel.hpp"
#include "kappa_weyl/radial_group.hpp"
#include "kappa_weyl/special.hpp"
#include "kappa_weyl/symbol.hpp"

namespace kappa_weyl {

struct StarConfig {
    double step_alpha = 0.25;
    double step_beta = 0.2;
    // Allowed edge magnitude of a product, relative to its peak.
    double tail_tol = 1e-8;
    int max_growth = 3;
    std::size_t max_nodes = 2049;
};

namespace detail {

inline double peak_of(const std::vector<cplx>& v) {
    double p = 0.0;
    for (const auto& c : v) p = std::max(p, std::abs(c));
    return p;
}

inline bool is_symmetric(const Lattice1D& l) { return std::abs(l.origin + l.last()) <= 1e-9 * l.step; }

inline bool aligned(const Lattice1D& l, double step) {
    if (std::abs(l.step - step) > 1e-12 * step) return false;
    double k = l.origin / step;
    return std::abs(k - std::round(k)) < 1e-9;
}

// Rows of a sampled symbol refined along beta by FFT zero-padding, read back with a
// short Lagrange stencil; exact for band-limited rows up to the stencil error.
class FineRows {
public:
    static constexpr std::size_t kFactor = 8;
    static constexpr int kPoints = 8; // nodes -3..4 around the base point

    FineRows() = default;

    explicit FineRows(const SampledMomentum& s) {
        const auto& ax = s.x_lattice();
        const auto& ay = s.y_lattice();
        std::size_t m = 2 * next_power_of_two(ay.size);
        n_ = m * kFactor;
        origin_ = ay.origin;
        h_ = ay.step / static_cast<double>(kFactor);
        v_.assign(ax.size * n_, 0.0);
        std::vector<cplx> coarse(m), fine(n_);
        for (std::size_t i = 0; i < ax.size; ++i) {
            std::fill(coarse.begin(), coarse.end(), cplx(0.0));
            for (std::size_t j = 0; j < ay.size; ++j) coarse[j] = s.at(i, j);
            dft_inplace(coarse, -1);
            std::fill(fine.begin(), fine.end(), cplx(0.0));
            for (std::size_t k = 0; k < m / 2; ++k) fine[k] = coarse[k];
            for (std::size_t k = m / 2 + 1; k < m; ++k) fine[n_ - (m - k)] = coarse[k];
            fine[m / 2] = 0.5 * coarse[m / 2];
            fine[n_ - m / 2] = 0.5 * coarse[m / 2];
            dft_inplace(fine, +1);
            for (std::size_t j = 0; j < n_; ++j) v_[i * n_ + j] = fine[j] / static_cast<double>(m);
        }
    }

    cplx operator()(std::size_t row, double y) const {
        double pos = (y - origin_) / h_;
        double fl = std::floor(pos);
        long base = static_cast<long>(fl) - 3;
        if (base < 0 || base + kPoints > static_cast<long>(n_)) return 0.0;
        double t = pos - fl;
        static const std::array<double, kPoints> denom = [] {
            std::array<double, kPoints> d{};
            for (int k = 0; k < kPoints; ++k) {
                double p = 1.0;
                for (int m = 0; m < kPoints; ++m)
                    if (m != k) p *= static_cast<double>(k - m);
                d[static_cast<std::size_t>(k)] = p;
            }
            return d;
        }();
        std::array<double, kPoints> d{}, pre{}, suf{};
        for (int k = 0; k < kPoints; ++k) d[static_cast<std::size_t>(k)] = t + 3.0 - static_cast<double>(k);
        pre[0] = 1.0;
        for (std::size_t k = 1; k < kPoints; ++k) pre[k] = pre[k - 1] * d[k - 1];
        suf[kPoints - 1] = 1.0;
        for (std::size_t k = kPoints - 1; k-- > 0;) suf[k] = suf[k + 1] * d[k + 1];
        const cplx* p = &v_[row * n_ + static_cast<std::size_t>(base)];
        cplx acc = 0.0;
        for (std::size_t k = 0; k < kPoints; ++k) acc += (pre[k] * suf[k] / denom[k]) * p[k];
        return acc;
    }

private:
    double origin_ = 0.0, h_ = 1.0;
    std::size_t n_ = 0;
    std::vector<cplx> v_;
};

// Row-wise support information of a sampled operand.
struct Operand {
    SampledMomentum s;
    FineRows fine;
    std::vector<double> row_max;
    std::vector<std::size_t> col_lo, col_hi; // inclusive, per row
    double peak = 0.0;

    explicit Operand(SampledMomentum sym) : s(std::move(sym)), fine(s) {
        const auto& ax = s.x_lattice();
        const auto& ay = s.y_lattice();
        peak = peak_of(s.values());
        row_max.assign(ax.size, 0.0);
        col_lo.assign(ax.size, 1);
        col_hi.assign(ax.size, 0);
        double thr = 1e-16 * peak;
        for (std::size_t i = 0; i < ax.size; ++i) {
            for (std::size_t j = 0; j < ay.size; ++j) {
                double m = std::abs(s.at(i, j));
                row_max[i] = std::max(row_max[i], m);
                if (m > thr) {
                    if (col_lo[i] > col_hi[i]) col_lo[i] = j;
                    col_hi[i] = j;
                }
            }
        }
    }

    bool row_active(std::size_t i) const { return row_max[i] > 1e-15 * peak && col_lo[i] <= col_hi[i]; }
};

struct TwistCoefficients {
    double weight; // measure factor of the integrand
    double a;      // second argument of the right factor is a*beta - b*beta'
    double b;
};

// phi1 * phi2 of the algebra B.
struct StarTwist {
    TwistCoefficients operator()(double alpha, double alpha1) const {
        double a = w(alpha - alpha1, alpha);
        return {a, a, w(alpha1 - alpha, alpha1)};
    }
};

// phi1 x phi2 of L^1(G): right factor evaluated at g'^{-1} g with Haar weight of g'.
struct GroupTwist {
    TwistCoefficients operator()(double alpha, double alpha1) const {
        double a = compose({-alpha1, 0.0}, {alpha, 1.0}).beta;
        double b = compose({-alpha1, 1.0}, {alpha, 0.0}).beta;
        return {haar({alpha1, 0.0}).weight, a, b};
    }
};

// Values of the twisted product at alphas[i] x bo[j], row-major.
template <class Twist>
std::vector<cplx> twisted_product(const Operand& L, const Operand& R, const std::vector<double>& alphas,
                                  const Lattice1D& bo, Twist twist) {
    const auto& lx = L.s.x_lattice();
    const auto& ly = L.s.y_lattice();
    const auto& rx = R.s.x_lattice();
    const auto& ry = R.s.y_lattice();
    const long margin = 4;
    std::vector<cplx> out(alphas.size() * bo.size, 0.0);
    if (L.peak == 0.0 || R.peak == 0.0) return out;

    parallel_for(alphas.size(), [&](std::size_t i) {
        double alpha = alphas[i];
        cplx* orow = &out[i * bo.size];
        for (std::size_t k = 0; k < lx.size; ++k) {
            if (!L.row_active(k)) continue;
            double alpha1 = lx.at(k);
            double alpha2 = alpha - alpha1;
            long ridx = rx.node_index(alpha2, 1e-7);
            if (ridx < 0 || !R.row_active(static_cast<std::size_t>(ridx))) continue;
            auto r = static_cast<std::size_t>(ridx);
            auto [wt, A, B] = twist(alpha, alpha1);
            double l_lo = ly.at(L.col_lo[k]) - margin * ly.step, l_hi = ly.at(L.col_hi[k]) + margin * ly.step;
            double r_lo = ry.at(R.col_lo[r]) - margin * ry.step, r_hi = ry.at(R.col_hi[r]) + margin * ry.step;
            for (std::size_t j = 0; j < bo.size; ++j) {
                double beta = bo.at(j);
                double Ab = A * beta;
                cplx acc = 0.0;
                if (B <= 1.0) {
                    // integrate over beta' on the left lattice
                    double lo = std::max(l_lo, (Ab - r_hi) / B), hi = std::min(l_hi, (Ab - r_lo) / B);
                    if (hi < lo) continue;
                    long j0 = std::max<long>(L.col_lo[k], static_cast<long>(std::ceil((lo - ly.origin) / ly.step)));
                    long j1 = std::min<long>(L.col_hi[k], static_cast<long>(std::floor((hi - ly.origin) / ly.step)));
                    for (long jj = j0; jj <= j1; ++jj) {
                        auto ju = static_cast<std::size_t>(jj);
                        acc += L.s.at(k, ju) * R.fine(r, Ab - B * ly.at(ju));
                    }
                    orow[j] += acc * (wt * ly.step);
                } else {
                    // integrate over y = A beta - B beta' on the right lattice
                    double lo = std::max(r_lo, Ab - B * l_hi), hi = std::min(r_hi, Ab - B * l_lo);
                    if (hi < lo) continue;
                    long m0 = std::max<long>(R.col_lo[r], static_cast<long>(std::ceil((lo - ry.origin) / ry.step)));
                    long m1 = std::min<long>(R.col_hi[r], static_cast<long>(std::floor((hi - ry.origin) / ry.step)));
                    for (long mm = m0; mm <= m1; ++mm) {
                        auto mu = static_cast<std::size_t>(mm);
                        acc += R.s.at(r, mu) * L.fine(k, (Ab - ry.at(mu)) / B);
                    }
                    orow[j] += acc * (wt / B * ry.step);
                }
            }
        }
        for (std::size_t j = 0; j < bo.size; ++j) orow[j] *= lx.step;
    });
    return out;
}

template <class S>
Box spectral_box_of(const S& s) {
    if constexpr (requires { s.spectral_support(); })
        return s.spectral_support();
    else
        return {-pi / 0.25, pi / 0.25, -pi / 0.25, pi / 0.25};
}

// Lattice steps able to resolve both operands.
template <class S1, class S2>
std::pair<double, double> common_steps(const S1& a, const S2& b, const StarConfig& cfg) {
    if constexpr (std::is_same_v<S1, SampledMomentum>)
        return {a.x_lattice().step, a.y_lattice().step};
    else if constexpr (std::is_same_v<S2, SampledMomentum>)
        return {b.x_lattice().step, b.y_lattice().step};
    else {
        Box sa = spectral_box_of(a), sb = spectral_box_of(b);
        double ex = std::max({sa.x_hi, -sa.x_lo, sb.x_hi, -sb.x_lo});
        double ey = std::max({sa.y_hi, -sa.y_lo, sb.y_hi, -sb.y_lo});
        return {std::min(cfg.step_alpha, 0.6 * pi / ex), std::min(cfg.step_beta, 0.6 * pi / ey)};
    }
}

template <MomentumSymbol S>
SampledMomentum on_lattice(const S& s, double da, double db) {
    if constexpr (std::is_same_v<S, SampledMomentum>) {
        if (aligned(s.x_lattice(), da) && std::abs(s.y_lattice().step - db) <= 1e-12 * db) return s;
    }
    Box b = s.support();
    return sample_momentum(s, Lattice1D::covering(b.x_lo, b.x_hi, da), Lattice1D::covering(b.y_lo, b.y_hi, db));
}

// Output box of a product: the group law applied to every pair of significant rows.
inline Box product_box(const Operand& L, const Operand& R, double rel = 1e-12) {
    auto row_range = [](const Operand& o, std::size_t i, double thr, double& lo, double& hi) {
        const auto& ay = o.s.y_lattice();
        bool any = false;
        for (std::size_t j = 0; j < ay.size; ++j)
            if (std::abs(o.s.at(i, j)) > thr) {
                if (!any) lo = ay.at(j);
                hi = ay.at(j);
                any = true;
            }
        return any;
    };
    const auto& lx = L.s.x_lattice();
    const auto& rx = R.s.x_lattice();
    std::vector<std::array<double, 3>> lrows, rrows;
    for (std::size_t i = 0; i < lx.size; ++i) {
        double lo = 0, hi = 0;
        if (L.row_max[i] > rel * L.peak && row_range(L, i, std::sqrt(rel) * L.peak, lo, hi)) lrows.push_back({lx.at(i), lo, hi});
    }
    for (std::size_t i = 0; i < rx.size; ++i) {
        double lo = 0, hi = 0;
        if (R.row_max[i] > rel * R.peak && row_range(R, i, std::sqrt(rel) * R.peak, lo, hi)) rrows.push_back({rx.at(i), lo, hi});
    }
    Box out{0, 0, 0, 0};
    bool first = true;
    for (const auto& l : lrows)
        for (const auto& r : rrows) {
            double a = l[0] + r[0];
            for (double b1 : {l[1], l[2]})
                for (double b2 : {r[1], r[2]}) {
                    double b = compose({l[0], b1}, {r[0], b2}).beta;
                    if (first) {
                        out = {a, a, b, b};
                        first = false;
                    }
                    out.x_lo = std::min(out.x_lo, a);
                    out.x_hi = std::max(out.x_hi, a);
                    out.y_lo = std::min(out.y_lo, b);
                    out.y_hi = std::max(out.y_hi, b);
                }
        }
    return out;
}

// Largest edge magnitude relative to the peak on each side: alpha-low, alpha-high, beta-low, beta-high.
inline std::array<double, 4> edge_ratios(const SampledMomentum& s) {
    const auto& ax = s.x_lattice();
    const auto& ay = s.y_lattice();
    double peak = peak_of(s.values());
    std::array<double, 4> e{0, 0, 0, 0};
    if (peak == 0.0) return e;
    for (std::size_t j = 0; j < ay.size; ++j) {
        e[0] = std::max(e[0], std::abs(s.at(0, j)));
        e[1] = std::max(e[1], std::abs(s.at(ax.size - 1, j)));
    }
    for (std::size_t i = 0; i < ax.size; ++i) {
        e[2] = std::max(e[2], std::abs(s.at(i, 0)));
        e[3] = std::max(e[3], std::abs(s.at(i, ay.size - 1)));
    }
    for (auto& v : e) v /= peak;
    return e;
}

inline double edge_ratio(const SampledMomentum& s) {
    auto e = edge_ratios(s);
    return *std::max_element(e.begin(), e.end());
}

template <class Twist, MomentumSymbol S1, MomentumSymbol S2>
SampledMomentum auto_product(const S1& p1, const S2& p2, const StarConfig& cfg, Twist twist) {
    auto [da, db] = common_steps(p1, p2, cfg);
    Operand L(on_lattice(p1, da, db));
    Operand R(on_lattice(p2, da, db));
    if (L.peak == 0.0 || R.peak == 0.0) {
        auto z = Lattice1D::centered(da, kInterpPoints);
        return SampledMomentum(z, Lattice1D::centered(db, kInterpPoints), {});
    }
    Box box = product_box(L, R, cfg.tail_tol);
    double ratio = 0.0;
    for (int attempt = 0; attempt <= cfg.max_growth; ++attempt) {
        auto ax = Lattice1D::covering(box.x_lo - 2 * da, box.x_hi + 2 * da, da);
        auto ay = Lattice1D::covering(box.y_lo - 2 * db, box.y_hi + 2 * db, db);
        if (ax.size > cfg.max_nodes || ay.size > cfg.max_nodes) break;
        std::vector<double> alphas(ax.size);
        for (std::size_t i = 0; i < ax.size; ++i) alphas[i] = ax.at(i);
        SampledMomentum out(ax, ay, twisted_product(L, R, alphas, ay, twist));
        auto e = edge_ratios(out);
        ratio = *std::max_element(e.begin(), e.end());
        if (ratio <= cfg.tail_tol) return out;
        // widen the offending sides of the (symmetric) lattice
        double wx = 0.25 * (ax.hi() - ax.lo()), wy = 0.25 * (ay.hi() - ay.lo());
        box = {ax.lo(), ax.hi(), ay.lo(), ay.hi()};
        if (e[0] > cfg.tail_tol || e[1] > cfg.tail_tol) {
            box.x_lo -= wx;
            box.x_hi += wx;
        }
        if (e[2] > cfg.tail_tol || e[3] > cfg.tail_tol) {
            box.y_lo -= wy;
            box.y_hi += wy;
        }
    }
    fail(Errc::QuadratureBoxTooSmall,
         "product tail " + std::to_string(ratio) + " of peak exceeds tolerance at the node cap");
}

} // namespace detail

// (phi1 * phi2)(alpha,beta) = int w(alpha-alpha',alpha) phi1(alpha',beta') phi2(alpha-alpha', ...)
template <MomentumSymbol S1, MomentumSymbol S2>
SampledMomentum star_momentum(const S1& phi1, const S2& phi2, const StarConfig& cfg = {}) {
    return detail::auto_product(phi1, phi2, cfg, detail::StarTwist{});
}

// Values of phi1 * phi2 on the line alpha = alpha0 at the nodes of bo.
template <MomentumSymbol S1, MomentumSymbol S2>
std::vector<cplx> star_momentum_line(const S1& phi1, const S2& phi2, double alpha0, const Lattice1D& bo,
                                     const StarConfig& cfg = {}) {
    auto [da, db] = detail::common_steps(phi1, phi2, cfg);
    detail::Operand L(detail::on_lattice(phi1, da, db));
    detail::Operand R(detail::on_lattice(phi2, da, db));
    return detail::twisted_product(L, R, {alpha0}, bo, detail::StarTwist{});
}

// Group algebra product with the left Haar measure.
template <MomentumSymbol S1, MomentumSymbol S2>
SampledMomentum convolve_group(const S1& phi1, const S2& phi2, const StarConfig& cfg = {}) {
    return detail::auto_product(phi1, phi2, cfg, detail::GroupTwist{});
}

inline MomentumMixture hat(const Symbol2D& f) { return fourier(f); }
inline SampledMomentum hat(const SampledPosition& f) { return to_momentum(f); }

// Hat of f (star) g: (f^ * g^)/(2 pi).
template <PositionSymbol F, PositionSymbol G>
SampledMomentum star_position(const F& f, const G& g, const StarConfig& cfg = {}) {
    return scaled(star_momentum(hat(f), hat(g), cfg), 1.0 / two_pi);
}

// ---- involutions, u, pointwise maps ------------------------------------------------

namespace detail {

inline void require_symmetric(const SampledMomentum& s) {
    if (!is_symmetric(s.x_lattice()) || !is_symmetric(s.y_lattice()))
        fail(Errc::BadShape, "reflection needs a lattice symmetric about the origin");
}

template <class F>
SampledMomentum map_sampled(const SampledMomentum& s, F&& f) {
    const auto& ax = s.x_lattice();
    const auto& ay = s.y_lattice();
    std::vector<cplx> v(ax.size * ay.size);
    for (std::size_t i = 0; i < ax.size; ++i)
        for (std::size_t j = 0; j < ay.size; ++j) v[i * ay.size + j] = f(i, j);
    return SampledMomentum(ax, ay, std::move(v));
}

} // namespace detail

// phi*(alpha,beta) = conj(phi(-alpha,-beta))
inline MomentumMixture involution_B(const MomentumMixture& phi) { return reflect_conj(phi); }

inline WeightedMixture involution_B(const WeightedMixture& phi) {
    return {{-phi.weight.k - phi.weight.m, phi.weight.m}, reflect_conj(phi.mixture)};
}

inline SampledMomentum involution_B(const SampledMomentum& s) {
    detail::require_symmetric(s);
    std::size_t nx = s.x_lattice().size, ny = s.y_lattice().size;
    return detail::map_sampled(s, [&](std::size_t i, std::size_t j) { return std::conj(s.at(nx - 1 - i, ny - 1 - j)); });
}

// phi^dagger(alpha,beta) = e^{-alpha} conj(phi(-alpha,-beta))
inline WeightedMixture dagger_group(const WeightedMixture& phi) {
    return {{-(1.0 + phi.weight.k + phi.weight.m), phi.weight.m}, reflect_conj(phi.mixture)};
}

inline WeightedMixture dagger_group(const MomentumMixture& phi) { return dagger_group(WeightedMixture{{}, phi}); }

inline SampledMomentum dagger_group(const SampledMomentum& s) {
    detail::require_symmetric(s);
    std::size_t nx = s.x_lattice().size, ny = s.y_lattice().size;
    return detail::map_sampled(s, [&](std::size_t i, std::size_t j) {
        return std::exp(-s.x_lattice().at(i)) * std::conj(s.at(nx - 1 - i, ny - 1 - j));
    });
}

// (u phi)(alpha,beta) = alpha/(e^alpha - 1) phi(alpha,beta)
inline WeightedMixture iso_u(const WeightedMixture& phi) { return {{phi.weight.k, phi.weight.m - 1}, phi.mixture}; }
inline WeightedMixture iso_u(const MomentumMixture& phi) { return iso_u(WeightedMixture{{}, phi}); }
inline WeightedMixture iso_u_inverse(const WeightedMixture& phi) {
    return {{phi.weight.k, phi.weight.m + 1}, phi.mixture};
}

inline SampledMomentum iso_u(const SampledMomentum& s) {
    return detail::map_sampled(s, [&](std::size_t i, std::size_t j) { return s.at(i, j) / exprel(s.x_lattice().at(i)); });
}

inline SampledMomentum iso_u_inverse(const SampledMomentum& s) {
    return detail::map_sampled(s, [&](std::size_t i, std::size_t j) { return s.at(i, j) * exprel(s.x_lattice().at(i)); });
}

// (phi(alpha, -beta))
inline MomentumMixture digamma(const MomentumMixture& phi) { return flip_second(phi); }

inline SampledMomentum digamma(const SampledMomentum& s) {
    detail::require_symmetric(s);
    std::size_t ny = s.y_lattice().size;
    return detail::map_sampled(s, [&](std::size_t i, std::size_t j) { return s.at(i, ny - 1 - j); });
}

// ---- even projections -------------------------------------------------------------

// E_+ / E_-: replace the second argument of the inverse transform by +|x| / -|x|.
inline SampledMomentum project_even(const SampledMomentum& s, int sign) {
    detail::require_symmetric(s);
    const auto& ax = s.x_lattice();
    const auto& ay = s.y_lattice();
    std::size_t mx = next_power_of_two(ax.size + 1), my = next_power_of_two(ay.size + 1);
    auto arr = SampledArray::zeros({Axis::make(ax.origin, ax.step, mx), Axis::make(ay.origin, ay.step, my)});
    for (std::size_t i = 0; i < ax.size; ++i)
        for (std::size_t j = 0; j < ay.size; ++j) arr.data[i * my + j] = s.at(i, j);
    arr = inverse_fourier(std::move(arr));
    // position lattice is x_j = (j - my/2) dx; the mirror of j is my - j
    std::size_t half = my / 2;
    for (std::size_t i = 0; i < mx; ++i) {
        cplx* row = &arr.data[i * my];
        if (sign >= 0)
            for (std::size_t j = 1; j < half; ++j) row[j] = row[my - j];
        else
            for (std::size_t j = half + 1; j < my; ++j) row[j] = row[my - j];
    }
    arr = fourier(std::move(arr));
    std::vector<cplx> v(ax.size * ay.size);
    for (std::size_t i = 0; i < ax.size; ++i)
        for (std::size_t j = 0; j < ay.size; ++j) v[i * ay.size + j] = arr.data[i * my + j];
    return SampledMomentum(ax, ay, std::move(v));
}

template <MomentumSymbol S>
SampledMomentum project_even(const S& phi, int sign, const StarConfig& cfg = {}) {
    auto [da, db] = detail::common_steps(phi, phi, cfg);
    Box b = phi.support();
    return project_even(sample_momentum(phi, Lattice1D::covering(b.x_lo, b.x_hi, da), Lattice1D::covering(b.y_lo, b.y_hi, db)),
                        sign);
}

// ---- trivial character and norms --------------------------------------------------

// chi_t(phi) = int dalpha dbeta phi(alpha,beta) e^{i alpha t}; multiplicative on *.
inline cplx trivial_character(const MomentumMixture& phi, double t) {
    cplx acc = 0.0;
    for (const auto& k : phi.terms) {
        double ua = k.u + t;
        double mag = two_pi * k.sigma * k.tau * std::exp(-0.5 * (k.sigma * k.sigma * ua * ua + k.tau * k.tau * k.v * k.v));
        acc += k.a * std::polar(mag, k.p * ua + k.q * k.v);
    }
    return acc;
}

inline cplx trivial_character(const SampledMomentum& s, double t) {
    const auto& ax = s.x_lattice();
    const auto& ay = s.y_lattice();
    cplx acc = 0.0;
    for (std::size_t i = 0; i < ax.size; ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < ay.size; ++j) row += s.at(i, j);
        acc += row * std::polar(1.0, ax.at(i) * t);
    }
    return acc * (ax.step * ay.step);
}

namespace detail {

template <MomentumSymbol S>
SampledMomentum fine_samples(const S& s) {
    if constexpr (std::is_same_v<S, SampledMomentum>) {
        return s;
    } else {
        Box b = s.support();
        Box sp = s.spectral_support();
        double dx = std::min(0.1, 0.3 * pi / std::max(sp.x_hi, -sp.x_lo));
        double dy = std::min(0.1, 0.3 * pi / std::max(sp.y_hi, -sp.y_lo));
        return sample_momentum(s, Lattice1D::covering(b.x_lo, b.x_hi, dx), Lattice1D::covering(b.y_lo, b.y_hi, dy));
    }
}

template <class W>
double weighted_l1(const SampledMomentum& s, W&& weight) {
    const auto& ax = s.x_lattice();
    const auto& ay = s.y_lattice();
    double acc = 0.0;
    for (std::size_t i = 0; i < ax.size; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < ay.size; ++j) row += std::abs(s.at(i, j));
        acc += weight(ax.at(i)) * row;
    }
    return acc * ax.step * ay.step;
}

} // namespace detail

template <MomentumSymbol S>
double l1_norm(const S& s) {
    return detail::weighted_l1(detail::fine_samples(s), [](double) { return 1.0; });
}

// Norm in L^1 of the group with the left Haar measure.
template <MomentumSymbol S>
double l1_haar_norm(const S& s) {
    return detail::weighted_l1(detail::fine_samples(s), [](double a) { return exprel(a); });
}

// L^1 distance of two sampled symbols on the union of their lattices.
inline double l1_distance(const SampledMomentum& a, const SampledMomentum& b) {
    if (a.x_lattice().same_as(b.x_lattice()) && a.y_lattice().same_as(b.y_lattice())) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.values().size(); ++i) acc += std::abs(a.values()[i] - b.values()[i]);
        return acc * a.x_lattice().step * a.y_lattice().step;
    }
    auto on_common = [](const Lattice1D& p, const Lattice1D& q) {
        if (std::abs(p.step - q.step) > 1e-12 * p.step) return false;
        return q.node_index(p.origin, 1e-7) != -1 || p.node_index(q.origin, 1e-7) != -1;
    };
    if (on_common(a.x_lattice(), b.x_lattice()) && on_common(a.y_lattice(), b.y_lattice())) {
        // node-wise on the union of two lattices sharing one set of nodes
        const auto& px = a.x_lattice();
        const auto& py = a.y_lattice();
        double x0 = std::min(px.lo(), b.x_lattice().lo()), x1 = std::max(px.hi(), b.x_lattice().hi());
        double y0 = std::min(py.lo(), b.y_lattice().lo()), y1 = std::max(py.hi(), b.y_lattice().hi());
        auto nx = static_cast<std::size_t>(std::llround((x1 - x0) / px.step)) + 1;
        auto ny = static_cast<std::size_t>(std::llround((y1 - y0) / py.step)) + 1;
        auto node = [](const SampledMomentum& s, double x, double y) -> cplx {
            long i = s.x_lattice().node_index(x, 1e-7), j = s.y_lattice().node_index(y, 1e-7);
            if (i < 0 || j < 0) return 0.0;
            return s.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        };
        double acc = 0.0;
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                double x = x0 + px.step * static_cast<double>(i), y = y0 + py.step * static_cast<double>(j);
                acc += std::abs(node(a, x, y) - node(b, x, y));
            }
        return acc * px.step * py.step;
    }
    double dx = std::min(a.x_lattice().step, b.x_lattice().step);
    double dy = std::min(a.y_lattice().step, b.y_lattice().step);
    Box u = a.support().united(b.support());
    auto ax = Lattice1D::covering(u.x_lo, u.x_hi, dx);
    auto ay = Lattice1D::covering(u.y_lo, u.y_hi, dy);
    double acc = 0.0;
    for (std::size_t i = 0; i < ax.size; ++i)
        for (std::size_t j = 0; j < ay.size; ++j)
            acc += std::abs(a.value(ax.at(i), ay.at(j)) - b.value(ax.at(i), ay.at(j)));
    return acc * dx * dy;
}

template <MomentumSymbol S>
double l1_distance(const SampledMomentum& a, const S& b) {
    const auto& ax = a.x_lattice();
    const auto& ay = a.y_lattice();
    double acc = 0.0;
    for (std::size_t i = 0; i < ax.size; ++i)
        for (std::size_t j = 0; j < ay.size; ++j) acc += std::abs(a.at(i, j) - cplx(b.value(ax.at(i), ay.at(j))));
    return acc * ax.step * ay.step;
}

} // namespace kappa_weyl
