#pragma once

#include <span>
#include <vector>

#include "levy/grid.hpp"
#include "levy/report.hpp"

namespace levy {

// f = |x|^{-3/2} 1{|x| <= 1} (singular) or the C-infinity bump exp(-1/(1-|x|^2)) (smooth), d = 2.
enum class ProbeProfile { Singular, Smooth };
// Radial: free-space Cauchy semigroup of a radial f, angular integrals in closed form
// (complete elliptic integrals), radial and time integrals by graded Gauss-Legendre.
// Grid: the torus machinery on `grid`; needs s >= 4h.
enum class ProbeRoute { Radial, Grid };

struct DivergenceRow {
    double s;
    std::vector<double> values;  // truncated G at each probe point
};

struct DivergenceProbe {
    ProbeProfile profile;
    ProbeRoute route;
    std::vector<Vec2> points;
    double t_max;
    std::vector<DivergenceRow> rows;

    json to_json() const;
    // Per point: successive increments of the values as s decreases.
    std::vector<std::vector<double>> increments() const;
};

DivergenceProbe divergence_probe(const Grid& grid, std::span<const double> s_values,
                                 ProbeProfile profile = ProbeProfile::Singular, ProbeRoute route = ProbeRoute::Radial);

// Singular profile: values strictly increase and the last increment is at least
// half the previous one. Smooth profile: last increment at most 5% of the first.
VerificationReport divergence_verdict(const DivergenceProbe& probe);

}  // namespace levy
