#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "kappa_weyl/quantization.hpp"
#include "kappa_weyl/symbol.hpp"

namespace kappa_weyl::io {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little, "binary kernel layout assumes a little-endian host");

// Schema problems in an input file; the CLI maps these to exit code 2.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using PositionInput = std::variant<Symbol2D, SampledPosition>;

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---- symbol JSON ------------------------------------------------------------------

namespace detail {

inline double number(const json& obj, const std::string& key, const std::string& where, bool required = true,
                     double fallback = 0.0) {
    if (!obj.contains(key)) {
        if (required) throw SchemaError(where + "." + key + ": missing");
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) throw SchemaError(where + "." + key + ": expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw SchemaError(where + "." + key + ": not finite");
    return x;
}

// a number, [re, im] or {"re": .., "im": ..}
inline cplx complex_value(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    if (v.is_object() && v.contains("re")) return {number(v, "re", where), number(v, "im", where, false)};
    throw SchemaError(where + ": expected a number, [re, im] or {\"re\", \"im\"}");
}

inline Lattice1D lattice(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_object()) throw SchemaError(where + "." + key + ": expected an object");
    const auto& l = obj.at(key);
    std::string w = where + "." + key;
    double step = number(l, "step", w);
    if (!(step > 0)) throw SchemaError(w + ".step: must be positive");
    if (!l.contains("size") || !l.at("size").is_number_unsigned()) throw SchemaError(w + ".size: expected a count");
    return {number(l, "origin", w), step, l.at("size").get<std::size_t>()};
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace detail

inline PositionInput symbol_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("$: expected an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw SchemaError("$.kind: missing");
    auto kind = j.at("kind").get<std::string>();
    if (kind == "gaussian_mixture") {
        if (!j.contains("terms") || !j.at("terms").is_array()) throw SchemaError("$.terms: expected an array");
        Symbol2D s;
        const auto& terms = j.at("terms");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            std::string w = "$.terms[" + std::to_string(i) + "]";
            const auto& t = terms[i];
            if (!t.is_object()) throw SchemaError(w + ": expected an object");
            if (!t.contains("a")) throw SchemaError(w + ".a: missing");
            GaussianTerm g{detail::complex_value(t.at("a"), w + ".a"),
                           detail::number(t, "p", w),
                           detail::number(t, "q", w),
                           detail::number(t, "sigma", w),
                           detail::number(t, "tau", w),
                           detail::number(t, "u", w, false),
                           detail::number(t, "v", w, false)};
            if (!(g.sigma > 0)) throw SchemaError(w + ".sigma: must be positive");
            if (!(g.tau > 0)) throw SchemaError(w + ".tau: must be positive");
            s.terms.push_back(g);
        }
        return s;
    }
    if (kind == "sampled") {
        auto ax = detail::lattice(j, "t", "$");
        auto ay = detail::lattice(j, "r", "$");
        if (!j.contains("values") || !j.at("values").is_array()) throw SchemaError("$.values: expected an array");
        const auto& vals = j.at("values");
        if (vals.size() != ax.size * ay.size)
            throw SchemaError("$.values: expected " + std::to_string(ax.size * ay.size) + " entries, got " +
                              std::to_string(vals.size()));
        std::vector<cplx> v(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i)
            v[i] = detail::complex_value(vals[i], "$.values[" + std::to_string(i) + "]");
        try {
            return SampledPosition(ax, ay, std::move(v));
        } catch (const Error& e) {
            throw SchemaError(std::string("$: ") + e.what());
        }
    }
    throw SchemaError("$.kind: unknown kind \"" + kind + "\" (expected gaussian_mixture or sampled)");
}

inline PositionInput parse_symbol(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
    }
    return symbol_from_json(j);
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline PositionInput load_symbol(const std::string& path) {
    try {
        return parse_symbol(read_text(path));
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

inline json to_json(const Symbol2D& s) {
    json terms = json::array();
    for (const auto& t : s.terms)
        terms.push_back({{"a", {t.a.real(), t.a.imag()}}, {"p", t.p}, {"q", t.q}, {"sigma", t.sigma}, {"tau", t.tau},
                         {"u", t.u}, {"v", t.v}});
    return {{"kind", "gaussian_mixture"}, {"terms", terms}};
}

inline json to_json(const SampledPosition& s) {
    auto lat = [](const Lattice1D& l) { return json{{"origin", l.origin}, {"step", l.step}, {"size", l.size}}; };
    json vals = json::array();
    for (auto v : s.values()) vals.push_back({v.real(), v.imag()});
    return {{"kind", "sampled"}, {"t", lat(s.x_lattice())}, {"r", lat(s.y_lattice())}, {"values", vals}};
}

// ---- output -----------------------------------------------------------------------

// Write to a sibling temporary and rename, so a failed run leaves no partial file.
inline void write_atomic(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(path + ": cannot write");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error(path + ": write failed");
        }
    }
    fs::rename(tmp, target);
}

inline std::string kernel_csv(const KernelMatrix& k) {
    std::string out;
    auto n = k.entries.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j) out += ',';
            out += fmt(k.entries(i, j).real());
            out += ',';
            out += fmt(k.entries(i, j).imag());
        }
        out += '\n';
    }
    return out;
}

// "KWK1", u32 n_points, f64 s_min, f64 s_max, then n^2 (re, im) f64 pairs row-major.
inline std::string kernel_binary(const KernelMatrix& k) {
    auto n = static_cast<std::uint32_t>(k.grid.n_points);
    std::string out("KWK1");
    auto put = [&out](const void* p, std::size_t len) { out.append(static_cast<const char*>(p), len); };
    put(&n, sizeof n);
    put(&k.grid.s_min, sizeof(double));
    put(&k.grid.s_max, sizeof(double));
    for (Eigen::Index i = 0; i < k.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < k.entries.cols(); ++j) {
            double re = k.entries(i, j).real(), im = k.entries(i, j).imag();
            put(&re, sizeof re);
            put(&im, sizeof im);
        }
    return out;
}

inline KernelMatrix kernel_from_binary(const std::string& bytes) {
    const std::size_t header = 4 + 4 + 16;
    if (bytes.size() < header || bytes.compare(0, 4, "KWK1") != 0) throw SchemaError("not a KWK1 kernel file");
    std::uint32_t n = 0;
    double lo = 0, hi = 0;
    std::memcpy(&n, bytes.data() + 4, 4);
    std::memcpy(&lo, bytes.data() + 8, 8);
    std::memcpy(&hi, bytes.data() + 16, 8);
    if (bytes.size() != header + static_cast<std::size_t>(n) * n * 16) throw SchemaError("KWK1 file has the wrong length");
    KernelMatrix k{GridSpec::make(n, lo, hi), Eigen::MatrixXcd(n, n), Provenance::Derived};
    const char* p = bytes.data() + header;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            double re, im;
            std::memcpy(&re, p, 8);
            std::memcpy(&im, p + 8, 8);
            p += 16;
            k.entries(i, j) = {re, im};
        }
    return k;
}

} // namespace kappa_weyl::io
