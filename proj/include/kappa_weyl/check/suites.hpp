#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kappa_weyl/check/oracles.hpp"
#include "kappa_weyl/kappa_weyl.hpp"

namespace kappa_weyl::check {

enum class Cmp { Below, AtLeast };

struct CheckResult {
    std::string suite;
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    Cmp cmp = Cmp::Below;
    bool pass = false;
    std::string note;
    bool timing = false; // value is a wall-clock measurement
};

struct SuiteConfig {
    GridSpec grid = default_grid();
    std::uint64_t seed = 1;
    StarConfig star{};
};

// ---- shared catalog ---------------------------------------------------------------

inline std::vector<Symbol2D> position_catalog() {
    auto one = [](GaussianTerm t) {
        Symbol2D s;
        s.terms.push_back(t);
        return s;
    };
    return {
        one({1.0, 0.2, 3.0, 1.2, 0.4, 0.3, 0.0}),
        one({cplx(0.5, 0.2), -0.3, 2.5, 1.0, 0.5, 0.0, 0.4}),
        one({1.0, 0.0, 3.0, 1.0, 0.5, 0.0, 0.0}),
        one({0.8, 0.5, 2.0, 0.8, 0.4, -0.2, 0.3}),
        one({cplx(0.0, 1.0), -0.4, 3.5, 1.5, 0.6, 0.1, -0.2}),
    };
}

inline MomentumMixture unit_gaussian(cplx a, double p, double q, double u = 0.0, double v = 0.0) {
    MomentumMixture m;
    m.terms.push_back({a, p, q, 1.0, 1.0, u, v});
    return m;
}

inline std::vector<StateVector> probe_states(const GridSpec& grid) {
    return {make_state(grid, GaussianGen{1.5, 0.5, 0.0}), make_state(grid, GaussianGen{1.0, 0.6, 0.8}),
            make_state(grid, HermiteGen{2, 1.5, 0.5})};
}

// ---- runner ---------------------------------------------------------------------

class Recorder {
public:
    explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

    void check(const std::string& name, double bound, const std::function<double()>& fn, Cmp cmp = Cmp::Below,
               bool timing = false) {
        CheckResult r{suite_, name, 0.0, bound, cmp, false, {}, timing};
        try {
            r.value = fn();
            r.pass = cmp == Cmp::Below ? r.value < bound : r.value >= bound;
        } catch (const Error& e) {
            r.value = std::nan("");
            r.note = e.what();
        }
        out_.push_back(std::move(r));
    }

    std::vector<CheckResult> take() { return std::move(out_); }

private:
    std::string suite_;
    std::vector<CheckResult> out_;
};

inline double dist(const GroupElement& a, const GroupElement& b) {
    return std::max(std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta));
}

inline double l2_distance(const StateVector& a, const StateVector& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e += std::norm(a.values[i] - b.values[i]);
    return std::sqrt(e * a.grid.step());
}

// ---- group ------------------------------------------------------------------------

struct GroupAxioms {
    double assoc = 0, identity = 0, inverse = 0, cocycle = 0, embedding = 0, seconds = 0;
};

inline GroupAxioms group_axioms(std::uint64_t seed, int count = 10000) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-3, 3);
    GroupAxioms r;
    for (int i = 0; i < count; ++i) {
        GroupElement g1{U(rng), U(rng)}, g2{U(rng), U(rng)}, g3{U(rng), U(rng)};
        r.assoc = std::max(r.assoc, dist(compose(compose(g1, g2), g3), compose(g1, compose(g2, g3))));
        r.identity = std::max({r.identity, dist(compose(g1, {0, 0}), g1), dist(compose({0, 0}, g1), g1)});
        r.inverse = std::max({r.inverse, dist(compose(inverse(g1), g1), {0, 0}), dist(compose(g1, inverse(g1)), {0, 0})});
        double c = w(g1.alpha, g2.alpha) * w(g2.alpha, g3.alpha);
        r.cocycle = std::max(r.cocycle, std::abs(c - w(g1.alpha, g3.alpha)) / w(g1.alpha, g3.alpha));
        Eigen::Matrix2d rhs = embed_matrix(g1) * embed_matrix(g2);
        double e = (embed_matrix(compose(g1, g2)) - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
        r.embedding = std::max(r.embedding, e);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::pair<double, double> weyl_representation(const GridSpec& grid, std::uint64_t seed, int pairs = 100) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> A(-1, 1), B(-4, 4), C(-1, 1);
    double rep = 0.0, split = 0.0;
    for (int i = 0; i < pairs; ++i) {
        auto x = make_state(grid, GaussianGen{2.0 + 0.5 * C(rng), 0.5 + 0.1 * C(rng), C(rng)});
        GroupElement g1{A(rng), B(rng)}, g2{A(rng), B(rng)};
        rep = std::max(rep, l2_distance(weyl_act(g1, weyl_act(g2, x)), weyl_act(compose(g1, g2), x)));
        split = std::max(split, l2_distance(weyl_split(g1.alpha, g1.beta, x), weyl_act(g1, x)));
    }
    return {rep, split};
}

inline double scaling_limit_ratio() {
    auto phi = [](double a, double b) { return std::exp(-0.5 * (a * a + b * b)); };
    Box box{-9, 9, -9, 9};
    return scaling_limit_residual(phi, 100.0, box) / scaling_limit_residual(phi, 1.0, box);
}

inline std::vector<CheckResult> group_suite(const SuiteConfig& cfg) {
    Recorder rec("group");
    GroupAxioms ax;
    rec.check(
        "runtime of 1e4 random group checks [s]", 5.0,
        [&] {
            ax = group_axioms(cfg.seed);
            return ax.seconds;
        },
        Cmp::Below, true);
    rec.check("associativity", 1e-12, [&] { return ax.assoc; });
    rec.check("identity", 1e-12, [&] { return ax.identity; });
    rec.check("inverse", 1e-12, [&] { return ax.inverse; });
    rec.check("w cocycle", 1e-12, [&] { return ax.cocycle; });
    rec.check("matrix embedding homomorphism", 1e-12, [&] { return ax.embedding; });
    std::pair<double, double> wr{};
    rec.check("W(g1)W(g2) = W(g1 g2), L2", 1e-8, [&] {
        wr = weyl_representation(cfg.grid, cfg.seed);
        return wr.first;
    });
    rec.check("split path = direct path, L2", 1e-10, [&] { return wr.second; });
    rec.check("scaling limit residual(100)/residual(1)", 1e-3, [] { return scaling_limit_ratio(); });
    return rec.take();
}

// ---- quantization -------------------------------------------------------------------

struct KernelOracle {
    double max_rel = 0.0;
    cplx constant = 0.0;
};

// kernel_kappa(f) xi against the Weyl-integral path; the constant is refit from the
// unnormalised kernel.
inline KernelOracle kernel_oracle(const GridSpec& grid, const std::vector<Symbol2D>& symbols) {
    KernelOracle r;
    std::vector<StateVector> raw, ref;
    auto states = probe_states(grid);
    for (const auto& f : symbols) {
        auto K = kernel_kappa(f, grid);
        auto fh = fourier(f);
        for (std::size_t k = 0; k < 2; ++k) {
            const auto& x = states[k];
            auto y = K.apply(x);
            auto y0 = weyl_integral_apply(fh, x);
            r.max_rel = std::max(r.max_rel, relative_l2(y, y0));
            StateVector u = y;
            for (auto& v : u.values) v /= kKernelConstant;
            raw.push_back(u);
            ref.push_back(y0);
        }
    }
    r.constant = fit_constant(raw, ref);
    return r;
}

inline double ccr_bridge_error(const GridSpec& grid, const std::vector<Symbol2D>& symbols) {
    double e = 0.0;
    for (const auto& f : symbols) {
        auto g = kappa_to_ccr_sampled(f, Lattice1D{-6.0, 0.02, 1101});
        e = std::max(e, relative_frobenius(kernel_ccr(g, grid), kernel_kappa(f, grid)));
    }
    return e;
}

inline double star_homomorphism_error(const GridSpec& grid, const Symbol2D& f, const Symbol2D& g, const StarConfig& sc) {
    auto prod = kernel_kappa(f, grid).then(kernel_kappa(g, grid));
    auto kh = kernel_pi(star_position(f, g, sc), grid);
    kh.entries /= two_pi;
    return relative_frobenius(kh, prod);
}

inline double star_associativity(const StarConfig& sc) {
    auto p1 = unit_gaussian(1.0, 0.0, 0.0);
    auto p2 = unit_gaussian(1.0, 0.3, -0.2, 0.5, 0.0);
    auto p3 = unit_gaussian(cplx(0, 1), -0.2, 0.1, 0.0, -0.3);
    auto l = star_momentum(star_momentum(p1, p2, sc), p3, sc);
    auto r = star_momentum(p1, star_momentum(p2, p3, sc), sc);
    return l1_distance(l, r);
}

// rho_g for a pure dilation against e^{i theta P} K e^{-i theta P}, theta = log lambda.
inline double dilation_covariance(const GridSpec& grid, double lambda) {
    CartesianMixture f{1, {cartesian_gaussian(1.0, 0.1, 1.0, Eigen::VectorXd::Constant(1, 3.0),
                                              Eigen::VectorXd::Constant(1, 0.4))}};
    GdElement g{Eigen::MatrixXd::Identity(1, 1), 0.0, lambda};
    auto plus = Eigen::VectorXd::Constant(1, 1.0);
    auto K = kernel_kappa(fiber(f, plus), grid);
    auto moved = kernel_kappa(fiber(act_gd(g, f), plus), grid);
    return relative_frobenius(conjugate_by_shift(K, std::log(lambda)), moved);
}

inline double gd_composition(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1, 1);
    double e = 0.0;
    for (int d = 1; d <= 3; ++d) {
        Eigen::VectorXd x0 = Eigen::VectorXd::Random(d), sx = Eigen::VectorXd::Constant(d, 0.8);
        CartesianMixture f{d, {cartesian_gaussian(cplx(1.0, 0.3), 0.2, 0.9, x0, sx, 0.4, Eigen::VectorXd::Constant(d, 0.3))}};
        for (int k = 0; k < 20; ++k) {
            auto rnd = [&] {
                Eigen::MatrixXd m = Eigen::MatrixXd::NullaryExpr(d, d, [&] { return U(rng); });
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
                Eigen::MatrixXd q = qr.householderQ();
                return GdElement{q, U(rng), std::exp(U(rng))};
            };
            auto g1 = rnd(), g2 = rnd();
            auto lhs = act_gd(compose_gd(g1, g2), f);
            auto rhs = act_gd(g1, act_gd(g2, f));
            for (int j = 0; j < 10; ++j) {
                Eigen::VectorXd x = 2.0 * Eigen::VectorXd::NullaryExpr(d, [&] { return U(rng); });
                double t = 2.0 * U(rng);
                e = std::max(e, std::abs(lhs.value(t, x) - rhs.value(t, x)));
            }
        }
    }
    return e;
}

inline std::vector<CheckResult> quantization_suite(const SuiteConfig& cfg) {
    Recorder rec("quantization");
    auto cat = position_catalog();
    KernelOracle ko{std::numeric_limits<double>::quiet_NaN(), 0.0};
    rec.check("kernel vs Weyl-integral path, relative L2 (5 symbols)", 1e-4, [&] {
        ko = kernel_oracle(cfg.grid, cat);
        return ko.max_rel;
    });
    rec.check("fitted kernel constant vs (2 pi)^(-1/2)", 1e-6,
              [&] {
                  if (std::isnan(ko.max_rel)) fail(Errc::InvalidArgument, "no oracle data to fit");
                  return std::abs(ko.constant - cplx(kKernelConstant));
              });
    rec.check("CCR bridge H_g vs K_f, relative Frobenius (5 symbols)", 1e-4,
              [&] { return ccr_bridge_error(cfg.grid, cat); });
    rec.check("real r-even symbol: self-adjoint kernel", 1e-10, [&] {
        Symbol2D f;
        f.terms.push_back({1.0, 0.3, 3.0, 1.0, 0.5, 0.0, 0.0});
        f.terms.push_back({1.0, 0.3, -3.0, 1.0, 0.5, 0.0, 0.0});
        auto K = kernel_kappa(f, cfg.grid);
        return (K.entries - K.entries.adjoint()).norm() / K.entries.norm();
    });
    rec.check("kernel(f star g) vs kernel(f) kernel(g), relative Frobenius", 1e-3,
              [&] { return star_homomorphism_error(cfg.grid, cat[0], cat[1], cfg.star); });
    rec.check("G_d composition, pointwise", 1e-12, [&] { return gd_composition(cfg.seed); });
    rec.check("d=1 dilation covariance, relative Frobenius", 1e-4, [&] { return dilation_covariance(cfg.grid, 1.6); });
    rec.check("sigma_64/sigma_1 of the default Gaussian kernel", 1e-6, [&] {
        auto sv = singular_decay(kernel_kappa(cat[2], cfg.grid), 64);
        return sv[63] / sv[0];
    });
    return rec.take();
}

// ---- algebra ----------------------------------------------------------------------

inline std::vector<CheckResult> algebra_suite(const SuiteConfig& cfg) {
    Recorder rec("algebra");
    const auto& sc = cfg.star;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    auto random_gaussian = [&] {
        return unit_gaussian(cplx(1.0 + U(rng), U(rng)), U(rng), U(rng), U(rng), U(rng));
    };
    auto phi = unit_gaussian(1.0, 0.2, -0.1, 0.3, 0.0);
    auto psi = unit_gaussian(cplx(0.6, 0.4), -0.3, 0.2, 0.0, 0.4);

    rec.check("star associativity, L1", 1e-5, [&] { return star_associativity(sc); });
    rec.check("pi(phi*) = pi(phi)^dagger", 1e-6, [&] {
        auto K = kernel_pi(phi, cfg.grid);
        auto Ks = kernel_pi(involution_B(phi), cfg.grid);
        return (Ks.entries - K.entries.adjoint()).norm() / K.entries.norm();
    });
    rec.check("digamma: pi_- = pi_+ o digamma", 1e-6, [&] {
        return relative_frobenius(kernel_pi(phi, cfg.grid, -1), kernel_pi(digamma(phi), cfg.grid, +1));
    });
    // E+- needs symbols whose inverse transform is negligible at r = 0, otherwise the
    // even extension has a kink and no finite lattice resolves it.
    Symbol2D fe, ge;
    fe.terms = {{1.0, 0.0, 3.0, 2.0, 0.4, 0.0, 0.0}, {cplx(0.3, -0.4), 0.5, -3.5, 2.0, 0.4, 0.2, 0.0}};
    ge.terms = {{cplx(0.5, 0.2), -0.3, 3.5, 2.0, 0.4, 0.0, 0.4}, {0.7, 0.2, -3.0, 2.0, 0.4, 0.0, -0.3}};
    auto ephi = fourier(fe), epsi = fourier(ge);
    for (int sign : {+1, -1}) {
        std::string tag = sign > 0 ? "E+" : "E-";
        rec.check(tag + " idempotent, L1", 1e-4, [&] {
            auto e1 = project_even(ephi, sign, sc);
            return l1_distance(project_even(e1, sign), e1);
        });
        rec.check(tag + " multiplicative, L1", 1e-4, [&] {
            auto lhs = project_even(star_momentum(ephi, epsi, sc), sign);
            auto rhs = star_momentum(project_even(ephi, sign, sc), project_even(epsi, sign, sc), sc);
            return l1_distance(lhs, rhs);
        });
    }
    rec.check("u(phi * psi) = u(phi) x u(psi), L1", 1e-5, [&] {
        auto lhs = iso_u(star_momentum(phi, psi, sc));
        auto rhs = convolve_group(iso_u(phi), iso_u(psi), sc);
        return l1_distance(lhs, rhs);
    });
    rec.check("u(phi*) = u(phi)^dagger, L1", 1e-5, [&] {
        auto lhs = detail::fine_samples(iso_u(involution_B(WeightedMixture{{}, phi})));
        return l1_distance(lhs, dagger_group(iso_u(phi)));
    });
    rec.check("u isometry |phi|_1 vs |u phi|_G", 1e-8,
              [&] { return std::abs(l1_norm(phi) - l1_haar_norm(iso_u(phi))) / l1_norm(phi); });
    rec.check("dagger isometry in L1(G)", 1e-8, [&] {
        auto p = iso_u(phi);
        return std::abs(l1_haar_norm(dagger_group(p)) - l1_haar_norm(p)) / l1_haar_norm(p);
    });
    rec.check("(phi x psi)^dagger = psi^dagger x phi^dagger, L1", 1e-5, [&] {
        // e^{-alpha} in the involution magnifies truncated tails
        StarConfig deep = sc;
        deep.tail_tol = std::min(sc.tail_tol, 1e-10);
        auto lhs = dagger_group(convolve_group(phi, psi, deep));
        auto rhs = convolve_group(dagger_group(psi), dagger_group(phi), deep);
        return l1_distance(lhs, rhs);
    });
    rec.check("trivial character multiplicative at t=0.7", 1e-6, [&] {
        double e = 0.0;
        for (int k = 0; k < 3; ++k) {
            auto a = random_gaussian(), b = random_gaussian();
            cplx lhs = trivial_character(star_momentum(a, b, sc), 0.7);
            cplx rhs = trivial_character(a, 0.7) * trivial_character(b, 0.7);
            e = std::max(e, std::abs(lhs - rhs));
        }
        return e;
    });
    return rec.take();
}

// ---- functionals --------------------------------------------------------------------

inline std::vector<CheckResult> functionals_suite(const SuiteConfig& cfg) {
    Recorder rec("functionals");
    auto cat = position_catalog();
    rec.check("trace: symbol vs matrix, relative", 1e-3, [&] {
        Symbol2D f;
        f.terms.push_back({1.0, 0.0, 3.0, std::sqrt(0.5), 0.4, 0.0, 0.0});
        return trace_symbol(f, cfg.grid).relative_error;
    });
    rec.check("HS norm: formula vs Frobenius, relative", 1e-3, [&] {
        Symbol2D f;
        f.terms.push_back({1.0, 0.0, 3.0, 0.5, 0.5, 0.0, 0.0});
        double h = hs_norm(f, cfg.grid);
        return std::abs(h - kernel_kappa(f, cfg.grid).hs_norm()) / h;
    });
    TracePropertiesReport tp;
    rec.check("cyclicity |tau(f*g) - tau(g*f)| / scale", 1e-4, [&] {
        tp = check_trace_properties(cat[0], cat[1], cfg.grid, cfg.star);
        return tp.cyclicity_residual / tp.scale;
    });
    rec.check("positivity Re tau(conj f * f) / scale", -1e-6, [&] { return tp.positivity / tp.scale; }, Cmp::AtLeast);
    rec.check("tau(conj f * f) vs hs_norm^2, relative", 1e-3,
              [&] { return std::abs(tp.positivity - tp.hs_squared) / tp.hs_squared; });
    rec.check("d=1 sphere prefactor is 2", 1e-300, [] { return std::abs(sphere_area(1) - 2.0); });
    rec.check("tau_c = tau_r, d=1, relative", 1e-4, [&] {
        CartesianMixture f{1,
                           {cartesian_gaussian(1.0, 0.2, 1.0, Eigen::VectorXd::Constant(1, 3.0), Eigen::VectorXd::Constant(1, 0.4)),
                            cartesian_gaussian(cplx(0.3, 0.5), -0.4, 0.8, Eigen::VectorXd::Constant(1, -3.0),
                                               Eigen::VectorXd::Constant(1, 0.45), 0.2, Eigen::VectorXd::Constant(1, 0.4))}};
        cplx c = tau_cartesian(f, 1, cfg.grid);
        cplx r = tau_radial(lift_cartesian(f, sphere_directions(1)), cfg.grid);
        return std::abs(c - r) / std::abs(c);
    });
    rec.check("tau_c = tau_r, d=2, relative", 1e-4, [&] {
        Eigen::VectorXd x0(2), sx(2);
        x0 << 3.0, 1.5;
        sx << 0.5, 0.5;
        CartesianMixture f{2, {cartesian_gaussian(1.0, 0.1, 1.0, x0, sx)}};
        cplx c = tau_cartesian(f, 2, cfg.grid);
        cplx r = tau_radial(lift_cartesian(f, sphere_directions(2, 256)), cfg.grid);
        return std::abs(c - r) / std::abs(c);
    });
    return rec.take();
}

// ---- uncertainty --------------------------------------------------------------------

inline double heisenberg_min_slack(const GridSpec& grid, std::uint64_t seed, int count = 100) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    double slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        Generator gen;
        switch (i % 3) {
        case 0: gen = GaussianGen{4 * U(rng) - 2, 0.3 + 0.9 * U(rng), 4 * U(rng) - 2}; break;
        case 1: gen = HermiteGen{static_cast<int>(6 * U(rng)), 2 * U(rng) - 1, 0.4 + 0.6 * U(rng)}; break;
        default: {
            double lo = 4 * U(rng) - 4;
            gen = BumpGen{lo, lo + 5.0 + 4.0 * U(rng)};
        }
        }
        auto m = moments(make_state(grid, gen), 1.0);
        slack = std::min(slack, m.product - m.bound);
    }
    return slack;
}

struct BumpScan {
    double lambda = -1.0;
    double delta_T = 0.0, delta_R = 0.0;
    double scaling = 0.0;
};

inline BumpScan bump_scan(double eps = 0.05, double lambda_max = 8.0) {
    BumpScan r;
    auto grid = bump_grid(eps, lambda_max);
    for (int l = 0; l <= static_cast<int>(lambda_max); ++l) {
        auto m = moments(make_bump_state(eps, l, grid).state);
        if (m.delta_T < eps && m.delta_R < eps) {
            r = {static_cast<double>(l), m.delta_T, m.delta_R, 0.0};
            break;
        }
    }
    auto base = make_bump_state(eps, 0.0, grid).state;
    double d0 = moments(base).delta_R;
    for (double l : {2.0, 4.0, 6.0}) {
        double dl = moments(translate(base, l)).delta_R;
        r.scaling = std::max(r.scaling, std::abs(dl - std::exp(-l) * d0) / (std::exp(-l) * d0));
    }
    return r;
}

inline std::vector<CheckResult> uncertainty_suite(const SuiteConfig& cfg) {
    Recorder rec("uncertainty");
    rec.check("Heisenberg slack, min over 100 states", -1e-8, [&] { return heisenberg_min_slack(cfg.grid, cfg.seed); },
              Cmp::AtLeast);
    BumpScan bs;
    rec.check("bump: smallest lambda <= 8 with dT, dR < 0.05", 8.0, [&] {
        bs = bump_scan();
        if (bs.lambda < 0) return std::numeric_limits<double>::infinity();
        return bs.lambda;
    });
    rec.check("dR(lambda) = e^-lambda dR(0), relative", 1e-8, [&] { return bs.scaling; });
    rec.check("LHC L_max [m] vs 2e-3", 1e-12, [] { return std::abs(scenario_lhc().L_m - 2e-3) / 2e-3; });
    rec.check("atomic L_max within a factor 3 of 1e17 m (log10 distance)", std::log10(3.0),
              [] { return std::abs(std::log10(scenario_atomic().L_m / 1e17)); });
    rec.check("earth required 1/kappa [m] vs 2e-45", 1e-12,
              [] { return std::abs(scenario_earth().kappa_inv_m - 2e-45) / 2e-45; });
    return rec.take();
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"group", "algebra", "quantization", "functionals", "uncertainty"};
    return n;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "group") return group_suite(cfg);
    if (name == "algebra") return algebra_suite(cfg);
    if (name == "quantization") return quantization_suite(cfg);
    if (name == "functionals") return functionals_suite(cfg);
    if (name == "uncertainty") return uncertainty_suite(cfg);
    fail(Errc::InvalidArgument, "unknown suite " + name);
}

} // namespace kappa_weyl::check
