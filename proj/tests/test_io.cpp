#include <catch_amalgamated.hpp>

#include <filesystem>

#include "kappa_weyl/io.hpp"

using namespace kappa_weyl;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string schema_message(const std::string& text) {
    try {
        io::parse_symbol(text);
    } catch (const io::SchemaError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("Gaussian mixture JSON") {
    auto in = io::parse_symbol(R"({"kind": "gaussian_mixture", "terms": [
        {"a": 1.0, "p": 0.0, "q": 3.0, "sigma": 1.0, "tau": 0.5},
        {"a": [0.5, -0.2], "p": 0.3, "q": 2.0, "sigma": 0.7, "tau": 0.4, "u": 0.1, "v": -0.3},
        {"a": {"re": 0.0, "im": 2.0}, "p": 0, "q": 1, "sigma": 1, "tau": 1}]})");
    REQUIRE(std::holds_alternative<Symbol2D>(in));
    const auto& f = std::get<Symbol2D>(in);
    REQUIRE(f.terms.size() == 3);
    CHECK(f.terms[1].a == cplx(0.5, -0.2));
    CHECK(f.terms[1].v == -0.3);
    CHECK(f.terms[2].a == cplx(0.0, 2.0));
    CHECK(f.terms[0].u == 0.0);

    auto again = io::symbol_from_json(io::to_json(f));
    const auto& g = std::get<Symbol2D>(again);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(g.terms[k].a == f.terms[k].a);
        CHECK(g.terms[k].tau == f.terms[k].tau);
    }
}

TEST_CASE("sampled JSON") {
    io::json j{{"kind", "sampled"},
               {"t", {{"origin", -1.0}, {"step", 0.25}, {"size", 10}}},
               {"r", {{"origin", 0.0}, {"step", 0.5}, {"size", 12}}}};
    j["values"] = io::json::array();
    for (int k = 0; k < 120; ++k) j["values"].push_back(k == 12 ? io::json{3.0, 1.0} : io::json(k));
    auto in = io::parse_symbol(j.dump());
    REQUIRE(std::holds_alternative<SampledPosition>(in));
    const auto& s = std::get<SampledPosition>(in);
    CHECK(s.at(1, 0) == cplx(3.0, 1.0));
    CHECK(s.at(9, 11) == cplx(119.0));
    CHECK(s.x_lattice().size == 10);
    auto back = io::symbol_from_json(io::to_json(s));
    CHECK(std::get<SampledPosition>(back).at(2, 1) == cplx(25.0));
}

TEST_CASE("schema diagnostics name the line or field") {
    CHECK_THAT(schema_message("{\n  \"kind\": \"gaussian_mixture\",\n  \"terms\": [\n"), ContainsSubstring("line 4"));
    CHECK_THAT(schema_message("{\"kind\": \"gaussian_mixture\", \"terms\": [{\"a\": 1, \"p\": 0, \"q\": 1, \"sigma\": 1}]}"),
               ContainsSubstring("$.terms[0].tau: missing"));
    CHECK_THAT(schema_message("{\"kind\": \"gaussian_mixture\", \"terms\": [{\"a\": 1, \"p\": 0, \"q\": 1, \"sigma\": -1, \"tau\": 1}]}"),
               ContainsSubstring("$.terms[0].sigma"));
    CHECK_THAT(schema_message("{\"kind\": \"gaussian_mixture\", \"terms\": [{\"a\": \"x\", \"p\": 0, \"q\": 1, \"sigma\": 1, \"tau\": 1}]}"),
               ContainsSubstring("$.terms[0].a"));
    CHECK_THAT(schema_message("{\"kind\": \"spline\"}"), ContainsSubstring("$.kind"));
    CHECK_THAT(schema_message("{\"kind\": \"sampled\", \"t\": {\"origin\": 0, \"step\": 1, \"size\": 2}, "
                              "\"r\": {\"origin\": 0, \"step\": 1, \"size\": 2}, \"values\": [1, 2, 3]}"),
               ContainsSubstring("expected 4 entries"));
    CHECK_THAT(schema_message("[1, 2]"), ContainsSubstring("$: expected an object"));
    CHECK_THROWS_AS(io::load_symbol("/nonexistent/symbol.json"), io::SchemaError);
}

TEST_CASE("binary kernel round trip is bit-identical") {
    Symbol2D f;
    f.terms.push_back({{1.0, 0.3}, 0.2, 3.0, 1.0, 0.5, 0.0, 0.4});
    auto K = kernel_kappa(f, GridSpec::make(64, -6.0, 6.0));
    auto bytes = io::kernel_binary(K);
    CHECK(bytes.size() == 24 + 64 * 64 * 16);
    CHECK(bytes.compare(0, 4, "KWK1") == 0);
    auto back = io::kernel_from_binary(bytes);
    CHECK(back.grid == K.grid);
    CHECK((back.entries.array() == K.entries.array()).all());
    CHECK(io::kernel_binary(back) == bytes);
    CHECK_THROWS_AS(io::kernel_from_binary(bytes.substr(0, 100)), io::SchemaError);
    CHECK_THROWS_AS(io::kernel_from_binary("XXXX" + bytes.substr(4)), io::SchemaError);
}

TEST_CASE("CSV kernel layout") {
    KernelMatrix K{GridSpec::make(8, -1.0, 1.0), Eigen::MatrixXcd::Zero(8, 8)};
    K.entries(0, 1) = cplx(0.5, -2.0);
    auto csv = io::kernel_csv(K);
    auto first = csv.substr(0, csv.find('\n'));
    CHECK(first == "0,0,0.5,-2,0,0,0,0,0,0,0,0,0,0,0,0");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
}

TEST_CASE("atomic writes") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "kappa_weyl_test_io";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto path = (dir / "out.txt").string();
    io::write_atomic(path, "first");
    io::write_atomic(path, "second");
    CHECK(io::read_text(path) == "second");
    CHECK_FALSE(fs::exists(path + ".tmp"));
    CHECK_THROWS(io::write_atomic((dir / "missing" / "out.txt").string(), "x"));
    CHECK_FALSE(fs::exists(dir / "missing"));
    fs::remove_all(dir);
}
