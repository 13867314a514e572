#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levy/levy_model.hpp"
#include "levy/report.hpp"
#include "levy/spectral.hpp"
#include "levy/time_quadrature.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

struct PathConfig {
    double eps = 0.05;
    double T = 1.0;
    std::size_t n = 10000;
    std::uint64_t seed = 1;
    Vec2 z{0.0, 0.0};

    bool operator==(const PathConfig&) const = default;
};

// Compound-Poisson approximation: all jumps with |y| > eps, none below.
struct PathSample {
    Vec2 start;
    std::vector<double> times;
    std::vector<Vec2> jumps;

    Vec2 position(double t) const;
    Vec2 terminal() const;
};

// nu(|y| > eps)
double jump_rate(const LevyModel& model, double eps);

PathSample simulate_path(const LevyModel& model, const PathConfig& cfg, std::size_t index);
std::vector<PathSample> simulate_paths(const LevyModel& model, const PathConfig& cfg);
// X_t of every path without keeping the jump records.
std::vector<Vec2> simulate_positions(const LevyModel& model, const PathConfig& cfg, double t);

struct DensityCheck {
    double t = 0.0;
    std::size_t n = 0;
    double bin_width = 0.0;
    int bins_per_axis = 0;
    double l1 = 0.0;
    double budget = 0.0;
    double exact_mass = 0.0;
    double max_empirical_density = 0.0;

    bool passed() const { return l1 <= budget; }
    json to_json() const;
    VerificationReport verification() const;
};

// Positions are wrapped onto the torus and binned in cells of bin_cells grid
// steps; the reference is the exact integral of the grid transition density over
// every bin.
DensityCheck empirical_density_check(std::span<const Vec2> positions, double t, const SymbolGrid& symbol,
                                     int bin_cells = 4);

struct Moments {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
};
Moments sample_moments(std::span<const double> x);

struct MartingaleSample {
    double terminal;     // M_T
    double realized;     // sum of squared jumps of M
    double predictable;  // <M>_T
};

struct MartingaleCheck {
    std::size_t n = 0;
    double T = 0.0;
    double eps = 0.0;
    Moments m, m2, realized, predictable;
    double tolerance = 0.05;

    bool mean_zero() const;
    bool isometry() const;
    bool variations_agree() const;
    bool passed() const { return mean_zero() && isometry() && variations_agree(); }
    json to_json() const;
    VerificationReport verification() const;
};

// M_t = P^eps_{T-t} f(X_t) - P^eps_T f(z) for the eps-truncated process, whose
// symbol is psi - (the part of psi from |y| <= eps). d = 1 only.
// martingale_samples takes the quadrature of nu restricted to |y| > jq.eps (no inner
// completion); jq.eps must be the simulation cutoff.
std::vector<MartingaleSample> martingale_samples(const LevyModel& model, const SymbolGrid& symbol,
                                                 const GridJumpQuadrature& jq, const GridFunction& f,
                                                 std::span<const PathSample> paths, double T);
MartingaleCheck martingale_check(const LevyModel& model, const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                 const GridFunction& f, const PathConfig& cfg, double tolerance = 0.05);

struct GstarIntegratedCheck {
    double T = 0.0;
    double lhs = 0.0;  // sum_x G_{*,T}(f)^2 h^d
    double rhs = 0.0;  // sum_z mean_z <M>_T h_z^d
    double rhs_stderr = 0.0;
    std::size_t z_points = 0;
    std::size_t paths_per_z = 0;
    double tolerance = 0.05;

    bool passed() const;
    json to_json() const;
    VerificationReport verification() const;
};

// Starting points every z_stride grid cells; cfg.n paths per point. d = 1 only.
GstarIntegratedCheck gstar_integrated_check(const LevyModel& model, const SymbolGrid& symbol,
                                            const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                            const GridFunction& f, const PathConfig& cfg, int z_stride,
                                            double tolerance = 0.05);

}  // namespace levy
