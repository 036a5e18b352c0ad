#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kappa_weyl/check/suites.hpp"
#include "kappa_weyl/io.hpp"
#include "kappa_weyl/kappa_weyl.hpp"

using namespace kappa_weyl;
using io::fmt;
using io::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kDivergent = 3 };

struct RunConfig {
    std::size_t grid_n = 1024;
    double s_min = -12.0, s_max = 12.0;
    double tol = 1e-8;
    std::uint64_t seed = 1;
    std::string format;
    std::string out;

    GridSpec grid() const { return GridSpec::make(grid_n, s_min, s_max); }

    StarConfig star() const {
        StarConfig c;
        c.tail_tol = tol;
        return c;
    }
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        io::write_atomic(cfg.out, text);
}

std::string format_or(const RunConfig& cfg, const std::string& fallback, std::initializer_list<const char*> allowed) {
    std::string f = cfg.format.empty() ? fallback : cfg.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw ConfigError("--format " + f + " is not available for this command");
}

template <class Fn>
decltype(auto) visit_symbol(const io::PositionInput& in, Fn&& fn) {
    return std::visit(std::forward<Fn>(fn), in);
}

// ---- verify -----------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    std::vector<std::string> names;
    if (suite == "all")
        names = check::suite_names();
    else if (std::find(check::suite_names().begin(), check::suite_names().end(), suite) != check::suite_names().end())
        names = {suite};
    else
        throw ConfigError("unknown suite " + suite);
    auto format = format_or(cfg, "csv", {"csv", "json"});

    check::SuiteConfig sc;
    sc.grid = cfg.grid();
    sc.seed = cfg.seed;
    sc.star = cfg.star();

    std::vector<check::CheckResult> all;
    for (const auto& n : names)
        for (auto& r : check::run_suite(n, sc)) all.push_back(std::move(r));

    bool ok = std::all_of(all.begin(), all.end(), [](const auto& r) { return r.pass; });
    std::string text;
    if (format == "json") {
        json rows = json::array();
        for (const auto& r : all)
            rows.push_back({{"suite", r.suite},
                            {"check", r.name},
                            {"value", r.timing || std::isnan(r.value) ? json(nullptr) : json(r.value)},
                            {"bound", r.bound},
                            {"cmp", r.cmp == check::Cmp::Below ? "<" : ">="},
                            {"pass", r.pass},
                            {"note", r.note}});
        text = json{{"pass", ok}, {"checks", rows}}.dump(2) + "\n";
    } else {
        text = "suite,check,status,value,cmp,bound,note\n";
        for (const auto& r : all) {
            std::string value = r.timing ? "timing" : fmt(r.value);
            text += r.suite + ",\"" + r.name + "\"," + (r.pass ? "PASS" : "FAIL") + "," + value + "," +
                    (r.cmp == check::Cmp::Below ? "<" : ">=") + "," + fmt(r.bound) + ",\"" + r.note + "\"\n";
        }
    }
    emit(cfg, text);
    return ok ? kOk : kFailed;
}

// ---- quantize / trace / spectrum -----------------------------------------------------

int cmd_quantize(const RunConfig& cfg, const std::string& file) {
    auto sym = io::load_symbol(file);
    auto format = format_or(cfg, "csv", {"csv", "bin"});
    if (format == "bin" && cfg.out.empty()) throw ConfigError("--format bin needs --out");
    auto grid = cfg.grid();
    auto K = visit_symbol(sym, [&](const auto& f) { return kernel_kappa(f, grid); });
    auto tr = visit_symbol(sym, [&](const auto& f) { return trace_symbol(f, grid); });
    double hs = visit_symbol(sym, [&](const auto& f) { return hs_norm(f, grid); });
    emit(cfg, format == "bin" ? io::kernel_binary(K) : io::kernel_csv(K));
    json summary{{"n_points", grid.n_points},
                 {"hs_norm", hs},
                 {"frobenius", K.hs_norm()},
                 {"trace_symbol", {tr.symbol_side.real(), tr.symbol_side.imag()}},
                 {"trace_operator", {tr.operator_side.real(), tr.operator_side.imag()}},
                 {"trace_relative_error", tr.relative_error}};
    (cfg.out.empty() ? std::cerr : std::cout) << summary.dump() << "\n";
    return kOk;
}

int cmd_trace(const RunConfig& cfg, const std::string& file) {
    auto sym = io::load_symbol(file);
    auto format = format_or(cfg, "json", {"json", "csv"});
    auto tr = visit_symbol(sym, [&](const auto& f) { return trace_symbol(f, cfg.grid()); });
    std::string text;
    if (format == "json") {
        text = json{{"symbol_side", {tr.symbol_side.real(), tr.symbol_side.imag()}},
                    {"operator_side", {tr.operator_side.real(), tr.operator_side.imag()}},
                    {"relative_error", tr.relative_error}}
                   .dump(2) +
               "\n";
    } else {
        text = "symbol_re,symbol_im,operator_re,operator_im,relative_error\n" + fmt(tr.symbol_side.real()) + "," +
               fmt(tr.symbol_side.imag()) + "," + fmt(tr.operator_side.real()) + "," + fmt(tr.operator_side.imag()) +
               "," + fmt(tr.relative_error) + "\n";
    }
    emit(cfg, text);
    return kOk;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& file, std::size_t top) {
    auto sym = io::load_symbol(file);
    auto format = format_or(cfg, "csv", {"csv", "json"});
    auto grid = cfg.grid();
    if (top == 0 || top > grid.n_points) throw ConfigError("--top must be in 1.." + std::to_string(grid.n_points));
    auto K = visit_symbol(sym, [&](const auto& f) { return kernel_kappa(f, grid); });
    auto sv = singular_decay(K, top);
    std::string text;
    if (format == "json") {
        text = json{{"singular_values", sv}}.dump(2) + "\n";
    } else {
        text = "index,sigma\n";
        for (std::size_t i = 0; i < sv.size(); ++i) text += std::to_string(i + 1) + "," + fmt(sv[i]) + "\n";
    }
    emit(cfg, text);
    return kOk;
}

// ---- star -------------------------------------------------------------------------

int cmd_star(const RunConfig& cfg, const std::string& f1, const std::string& f2) {
    auto a = io::load_symbol(f1);
    auto b = io::load_symbol(f2);
    auto format = format_or(cfg, "json", {"json", "csv"});
    auto sc = cfg.star();
    auto h = std::visit([&](const auto& x, const auto& y) { return to_position(star_position(x, y, sc)); }, a, b);
    std::string text;
    if (format == "json") {
        text = io::to_json(h).dump() + "\n";
    } else {
        text = "t,r,re,im\n";
        const auto& ax = h.x_lattice();
        const auto& ay = h.y_lattice();
        for (std::size_t i = 0; i < ax.size; ++i)
            for (std::size_t j = 0; j < ay.size; ++j) {
                cplx v = h.at(i, j);
                text += fmt(ax.at(i)) + "," + fmt(ay.at(j)) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
            }
    }
    emit(cfg, text);
    return kOk;
}

// ---- uncertainty / estimate ------------------------------------------------------------

int cmd_uncertainty(const RunConfig& cfg, double eps, double lambda_max, std::size_t steps, double kappa) {
    if (!(eps > 0) || !(lambda_max >= 0) || steps < 1 || !(kappa > 0))
        throw ConfigError("need --eps > 0, --lambda-max >= 0, --steps >= 1, --kappa > 0");
    auto format = format_or(cfg, "csv", {"csv", "json"});
    auto grid = bump_grid(eps, lambda_max);
    json rows = json::array();
    std::string text = "lambda,delta_T,delta_R,product,bound\n";
    for (std::size_t k = 0; k < steps; ++k) {
        double lambda = steps == 1 ? 0.0 : lambda_max * static_cast<double>(k) / static_cast<double>(steps - 1);
        auto m = moments(make_bump_state(eps, lambda, grid).state, kappa);
        text += fmt(lambda) + "," + fmt(m.delta_T) + "," + fmt(m.delta_R) + "," + fmt(m.product) + "," + fmt(m.bound) + "\n";
        rows.push_back({{"lambda", lambda}, {"delta_T", m.delta_T}, {"delta_R", m.delta_R}, {"product", m.product},
                        {"bound", m.bound}});
    }
    emit(cfg, format == "json" ? rows.dump(2) + "\n" : text);
    return kOk;
}

struct EstimateArgs {
    bool lhc = false, atomic = false, earth = false;
    double dT = 0, dR = 0, kappa_inv = 1e-35, L = 0;
};

int cmd_estimate(const RunConfig& cfg, const EstimateArgs& a) {
    auto format = format_or(cfg, "csv", {"csv", "json"});
    PhysicalScales sc;
    sc.kappa_inv_m = a.kappa_inv;
    std::vector<Scenario> rows;
    if (a.lhc) rows.push_back(scenario_lhc(sc));
    if (a.atomic) rows.push_back(scenario_atomic(sc));
    if (a.earth) rows.push_back(scenario_earth(sc));
    if (a.dT > 0 || a.dR > 0 || a.L > 0) {
        if (!(a.dT > 0 && a.dR > 0)) throw ConfigError("custom estimates need --dT and --dR");
        Scenario s{"custom", a.dT, a.dR, 0.0, 0.0};
        if (a.L > 0) {
            s.L_m = a.L;
            s.kappa_inv_m = required_kappa_inv(a.L, sc.c_m_per_s * a.dT * a.dR);
        } else {
            s.kappa_inv_m = sc.kappa_inv_m;
            s.L_m = estimate_L(a.dT, a.dR, sc);
        }
        rows.push_back(s);
    }
    if (rows.empty()) rows = {scenario_lhc(sc), scenario_atomic(sc), scenario_earth(sc)};
    std::string text;
    if (format == "json") {
        json j = json::array();
        for (const auto& s : rows)
            j.push_back({{"scenario", s.name}, {"dT_s", s.dT_s}, {"dR_m", s.dR_m}, {"L_m", s.L_m}, {"kappa_inv_m", s.kappa_inv_m}});
        text = j.dump(2) + "\n";
    } else {
        text = "scenario,dT_s,dR_m,L_m,kappa_inv_m\n";
        for (const auto& s : rows)
            text += s.name + "," + fmt(s.dT_s) + "," + fmt(s.dR_m) + "," + fmt(s.L_m) + "," + fmt(s.kappa_inv_m) + "\n";
    }
    emit(cfg, text);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kappa-Minkowski Weyl quantisation: kernels, star products, traces, uncertainty"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--grid-n", cfg.grid_n, "grid points (power of two)")->capture_default_str();
    app.add_option("--s-min", cfg.s_min, "lower end of the s grid")->capture_default_str();
    app.add_option("--s-max", cfg.s_max, "upper end of the s grid")->capture_default_str();
    app.add_option("--tol", cfg.tol, "tail tolerance of product boxes, relative to the peak")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "random seed of the verification suites")->capture_default_str();
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "bin", "json"}));
    app.add_option("--out", cfg.out, "output path (written atomically); stdout if omitted");

    std::string suite, file1, file2;
    std::size_t top = 64;
    double eps = 0.05, lambda_max = 8.0, kappa = 1.0;
    std::size_t steps = 9;
    EstimateArgs est;

    auto* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("suite", suite, "group|algebra|quantization|functionals|uncertainty|all")->required();
    auto* quantize = app.add_subcommand("quantize", "kernel matrix of a symbol");
    quantize->add_option("symbol", file1, "symbol JSON")->required();
    auto* star = app.add_subcommand("star", "star product of two symbols");
    star->add_option("f", file1, "left symbol JSON")->required();
    star->add_option("g", file2, "right symbol JSON")->required();
    auto* trace = app.add_subcommand("trace", "trace of a symbol, both sides");
    trace->add_option("symbol", file1, "symbol JSON")->required();
    auto* spectrum = app.add_subcommand("spectrum", "leading singular values of the kernel");
    spectrum->add_option("symbol", file1, "symbol JSON")->required();
    spectrum->add_option("--top", top, "number of singular values")->capture_default_str();
    auto* unc = app.add_subcommand("uncertainty", "bump-state scan of Delta T, Delta R");
    unc->add_option("--eps", eps)->capture_default_str();
    unc->add_option("--lambda-max", lambda_max)->capture_default_str();
    unc->add_option("--steps", steps)->capture_default_str();
    unc->add_option("--kappa", kappa)->capture_default_str();
    auto* estimate = app.add_subcommand("estimate", "physical-scale estimates of L and 1/kappa");
    estimate->add_flag("--lhc", est.lhc);
    estimate->add_flag("--atomic", est.atomic);
    estimate->add_flag("--earth", est.earth);
    estimate->add_option("--dT", est.dT, "custom Delta T [s]");
    estimate->add_option("--dR", est.dR, "custom Delta R [m]");
    estimate->add_option("--kappa-inv", est.kappa_inv, "1/kappa [m]")->capture_default_str();
    estimate->add_option("--L", est.L, "custom length [m]; solves for 1/kappa");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        try {
            (void)cfg.grid();
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
        if (verify->parsed()) return cmd_verify(cfg, suite);
        if (quantize->parsed()) return cmd_quantize(cfg, file1);
        if (star->parsed()) return cmd_star(cfg, file1, file2);
        if (trace->parsed()) return cmd_trace(cfg, file1);
        if (spectrum->parsed()) return cmd_spectrum(cfg, file1, top);
        if (unc->parsed()) return cmd_uncertainty(cfg, eps, lambda_max, steps, kappa);
        if (estimate->parsed()) return cmd_estimate(cfg, est);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const io::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == Errc::DivergentAtOrigin ? kDivergent : kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kOk;
}
