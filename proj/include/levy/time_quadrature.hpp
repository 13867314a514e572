#pragma once

#include <string>
#include <vector>

#include "levy/spectral.hpp"

namespace levy {

struct TimeQuadratureOptions {
    double t_min = 1e-4;
    double t_max = 0.0;  // 0: chosen so that exp(-t_max psi_min) < decay
    int nodes_per_decade = 6;
    double decay = 1e-8;

    bool operator==(const TimeQuadratureOptions&) const = default;
};

// Trapezoid rule in s = log t on [t_min, t_max], with the head [0, t_min]
// approximated by t_min g(t_min) and an exponential tail g(t_max)/tail_rate.
struct TimeQuadrature {
    std::vector<double> t;
    std::vector<double> v;
    double t_min;
    double t_max;
    double tail_rate;
    std::string scheme;

    std::size_t size() const { return t.size(); }
    // Weights of int_0^T of the piecewise-linear (in log t) interpolant of t g(t).
    // Nodes beyond T get zero weight; weights are nondecreasing in T.
    TimeQuadrature truncated(double T) const;
};

TimeQuadrature make_time_quadrature(const SymbolGrid& symbol, const TimeQuadratureOptions& opts = {});

}  // namespace levy
