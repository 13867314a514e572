#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levy/errors.hpp"
#include "levy/family.hpp"
#include "levy/levy_model.hpp"
#include "levy/report.hpp"
#include "levy/time_quadrature.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

struct ModelConfig {
    std::string kind = "isotropic-stable";
    int d = 1;
    double alpha = 1.5;
    double lambda = 0.0;
    double R = 0.0;
    std::vector<Atom> atoms;

    LevyModel build() const;
    bool operator==(const ModelConfig&) const;
};

struct GridConfig {
    int d = 1;
    int N = 512;
    double L = 16.0;

    Grid build() const { return Grid(d, N, L); }
    bool operator==(const GridConfig&) const = default;
};

// Free-space jump quadrature (symbol accuracy, Levy condition). Zero eps / rmax
// select h/2 and 4L.
struct JumpConfig {
    double eps = 0.0;
    double rmax = 0.0;
    int n_radial = 96;
    int n_angular = 32;

    bool operator==(const JumpConfig&) const = default;
};

struct FamilyConfig {
    std::string preset = "standard";  // "standard" or "custom"
    std::vector<TestFunction> members;

    std::vector<TestFunction> resolve(int d, double L) const;
    bool operator==(const FamilyConfig&) const = default;
};

struct Tolerances {
    double symbol = 1e-3;
    double density = 1e-3;
    double mass = 1e-6;
    double chapman_kolmogorov = 1e-3;
    double hardy_stein = 2e-2;
    double hs_slope = 0.8;
    double lemma_slack = 1e-12;
    double ratio_seed_stability = 0.05;
    double maximal = 1e-2;
    double isometry = 1e-2;
    double polarization = 1e-2;
    double norm_drift = 0.05;
    double duality_slack = 1e-8;
    double multiplier_identity = 1e-3;
    double marcinkiewicz = 1e-2;
    double pairing = 1e-2;
    double pairing_slack = 1e-8;
    double sup_slack = 1e-8;
    double mc = 0.05;

    bool operator==(const Tolerances&) const = default;
};

struct HardySteinConfig {
    std::vector<double> p{1.5, 2.0, 3.0};
    std::vector<double> lemma_p{1.1, 1.5, 1.9};
    std::size_t lemma_samples = 100000;
    std::vector<double> maximal_p{1.5, 2.0, 3.0};
    bool refinement = true;

    bool operator==(const HardySteinConfig&) const = default;
};

struct SquareFnConfig {
    std::vector<double> p{1.5, 3.0};
    bool refinement = true;
    int duality_pairs = 20;
    double duality_p = 1.5;
    bool divergence = true;
    int divergence_N = 256;

    bool operator==(const SquareFnConfig&) const = default;
};

struct MultiplierConfig {
    double alpha = 1.0;
    int axis = 1;
    int N = 128;  // grid of the two-dimensional Marcinkiewicz run
    double p = 1.5;

    bool operator==(const MultiplierConfig&) const = default;
};

struct McConfig {
    double eps = 0.05;
    double T = 1.0;
    std::size_t n = 10000;
    std::size_t gstar_n = 1000;  // paths per z point
    double density_eps = 1e-3;
    std::size_t density_n = 100000;
    double density_t = 1.0;
    int z_stride = 8;
    bool dump_paths = false;

    bool operator==(const McConfig&) const = default;
};

struct RunConfig {
    ModelConfig model;
    GridConfig grid;
    JumpConfig jump;
    GridQuadratureOptions grid_quadrature;
    TimeQuadratureOptions time;
    FamilyConfig family;
    std::vector<std::string> suites{"all"};
    Tolerances tolerances;
    HardySteinConfig hardy_stein;
    SquareFnConfig square_fn;
    MultiplierConfig multiplier;
    McConfig mc;
    std::string output_dir = "out";
    std::uint64_t seed = 1;

    // Throws ConfigError naming the offending field.
    void validate() const;
    bool operator==(const RunConfig&) const;
};

const std::vector<std::string>& known_suites();

RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& cfg);
// The emitted TOML document as JSON, for embedding in reports.
json config_json(const RunConfig& cfg);

}  // namespace levy
