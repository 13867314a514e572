#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "levy/config.hpp"
#include "levy/io.hpp"
#include "levy/suites.hpp"

using namespace levy;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("levy_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text).validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
    const RunConfig c = parse_config("");
    CHECK(c == RunConfig{});
    CHECK(c.grid.N == 512);
    CHECK(c.tolerances.hardy_stein == 0.02);
}

TEST_CASE("config round-trips through TOML") {
    const std::string text = R"(
seed = 42
output_dir = "x"
suites = ["symbol", "mc"]
[model]
kind = "compound-poisson"
d = 2
atoms = [ { location = [1.0, 0.5], mass = 0.25 }, { location = [-1.0, -0.5], mass = 0.25 } ]
[grid]
d = 2
N = 64
L = 8.0
[family]
preset = "custom"
members = [ { label = "a", bumps = [ { center = [0.5, -1.0], width = 0.7, amplitude = -2.0 } ] } ]
[tolerances]
isometry = 0.002
[hardy_stein]
p = [1.25, 4.0]
[mc]
dump_paths = true
n = 1234
)";
    const RunConfig a = parse_config(text);
    a.validate();
    CHECK(a.seed == 42);
    CHECK(a.model.atoms.size() == 2);
    CHECK(a.model.atoms[0].location[1] == 0.5);
    CHECK(a.family.members[0].bumps[0].amplitude == -2.0);
    CHECK(a.tolerances.isometry == 0.002);
    const RunConfig b = parse_config(emit_config(a));
    CHECK(a == b);
    CHECK(emit_config(a) == emit_config(b));
    CHECK(config_json(a)["hardy_stein"]["p"][1] == 4.0);
}

TEST_CASE("config errors carry the field path") {
    CHECK(error_of("[model]\nalphaa = 1.0\n").find("model.alphaa") != std::string::npos);
    CHECK(error_of("[grid]\nN = \"big\"\n").find("grid.N") != std::string::npos);
    CHECK(error_of("[grid]\nN = 100\n").find("grid.N") != std::string::npos);
    CHECK(error_of("suites = [\"symbol\", \"nope\"]\n").find("suites[1]") != std::string::npos);
    CHECK(error_of("[tolerances]\nmaximal = -1.0\n").find("tolerances.maximal") != std::string::npos);
    CHECK(error_of("[model]\nd = 2\n").find("grid.d") != std::string::npos);
    CHECK(error_of("[hardy_stein]\nlemma_p = [1.5, 2.5]\n").find("hardy_stein.lemma_p[1]") != std::string::npos);
    CHECK(error_of("[model]\nkind = \"gaussian\"\n").find("model.kind") != std::string::npos);
    CHECK(error_of("[family]\npreset = \"custom\"\nmembers = [ { label = \"a\", bumps = [ { center = [0.0], width = 1.0, colour = 2 } ] } ]\n")
              .find("family.members[0].bumps[0].colour") != std::string::npos);
    CHECK_THROWS_AS(parse_config("[grid\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/levy.toml"), ConfigError);
}

TEST_CASE("grid CSV and raw round trips") {
    const fs::path dir = scratch("io");
    for (int d : {1, 2}) {
        const Grid g(d, 16, 3.0);
        const GridFunction f = GridFunction::sample(g, [](const Vec2& x) { return std::sin(x[0]) * std::exp(x[1]) / 3.0; });
        write_grid_csv(f, dir / "f.csv", "f");
        const GridFunction c = read_grid_csv(dir / "f.csv", g);
        CHECK(c.values() == f.values());
        write_grid_raw(f, dir / "f", "f");
        CHECK(fs::file_size(dir / "f.bin") == 8 * g.size());
        const RawField r = read_grid_raw(dir / "f");
        CHECK(r.name == "f");
        CHECK(r.field.grid() == g);
        CHECK(r.field.values() == f.values());
    }
    const std::string head = slurp(dir / "f.csv").substr(0, 8);
    CHECK(head == "x,y,f\n-3");
    CHECK_THROWS(read_grid_csv(dir / "f.csv", Grid(2, 8, 3.0)));
}

TEST_CASE("dual CSV lists frequencies in ascending order") {
    const fs::path dir = scratch("dual");
    const Grid g(1, 8, 3.14159265358979323846);
    std::vector<double> v(8);
    for (int k = 0; k < 8; ++k) v[k] = g.signed_index(k);
    write_dual_csv(g, v, dir / "m.csv", "m");
    std::ifstream in(dir / "m.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "xi,m");
    double prev = -1e9;
    for (int k = 0; k < 8; ++k) {
        std::getline(in, line);
        const double xi = std::stod(line.substr(0, line.find(',')));
        const double m = std::stod(line.substr(line.find(',') + 1));
        CHECK(xi > prev);
        CHECK(xi == doctest::Approx(m));
        prev = xi;
    }
}

TEST_CASE("suite runs: reproducible JSON, unknown suites rejected") {
    RunConfig cfg;
    cfg.grid.N = 512;
    cfg.grid.L = 8.0;
    cfg.model.alpha = 1.0;
    cfg.output_dir = scratch("suite_a").string();
    const SuiteResult a = run_suite(cfg, "density");
    CHECK(a.passed);
    const json ja = strip_metadata(json::parse(slurp(fs::path(cfg.output_dir) / "density.json")));
    cfg.output_dir = scratch("suite_b").string();
    run_suite(cfg, "density");
    json jb = strip_metadata(json::parse(slurp(fs::path(cfg.output_dir) / "density.json")));
    jb["config"]["output_dir"] = ja["config"]["output_dir"];
    CHECK(ja.dump() == jb.dump());
    CHECK_FALSE(ja.contains("metadata"));
    CHECK(ja["passed"] == true);
    CHECK(fs::exists(fs::path(cfg.output_dir) / "density_t1.csv"));
    CHECK_THROWS_AS(run_suite(cfg, "nope"), UsageError);
}

TEST_CASE("aggregate fails when any report fails") {
    RunConfig cfg;
    cfg.grid.N = 64;
    cfg.model.kind = "compound-poisson";
    cfg.model.atoms = {{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}};
    cfg.output_dir = scratch("cp").string();
    const SuiteResult r = run_suite(cfg, "symbol");
    CHECK_FALSE(r.passed);
    int failed = 0;
    for (const auto& v : r.reports) failed += !v.passed;
    CHECK(failed == 1);
}
