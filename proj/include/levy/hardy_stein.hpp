#pragma once

#include <cstdint>
#include <vector>

#include "levy/report.hpp"
#include "levy/spectral.hpp"
#include "levy/time_quadrature.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

struct PExponent {
    double p;
    double q;
    explicit PExponent(double p);
};

double F(const PExponent& p, double a, double b);
double F_eps(const PExponent& p, double eps, double a, double b);

struct TaylorBoundRatios {
    double min_ratio;
    double max_ratio;
    std::size_t samples;
    std::size_t skipped;
};

// Extremes of F(a,b) / ((b-a)^2 max(|a|,|b|)^{p-2}) over random (a, b) in [-10, 10]^2
// with log-uniform magnitudes down to 1e-6.
TaylorBoundRatios taylor_bound_ratios(const PExponent& p, std::size_t sample_count, std::uint64_t seed);

struct RegularizedBoundCheck {
    std::size_t samples;
    double max_excess;  // max of F_eps - F/(p-1)
    double min_value;   // min of F_eps
    bool passed;
};

// 0 <= F_eps <= F/(p-1) + slack over random (eps, a, b); requires 1 < p < 2.
RegularizedBoundCheck regularized_bound_check(const PExponent& p, std::size_t sample_count, std::uint64_t seed,
                                              double slack = 1e-12);

struct HardySteinReport {
    double p = 0.0;
    double lhs = 0.0;          // ||f||_p^p - ||Pi_0 f||_p^p
    double lhs_raw = 0.0;      // ||f||_p^p
    double equilibrium = 0.0;  // ||Pi_0 f||_p^p
    double rhs = 0.0;
    double rel_error = 0.0;
    std::vector<double> times;
    std::vector<double> partial_sums;  // per time node: sum_x sum_y F h^d
    json grid;
    json quadratures;
    double runtime_ms = 0.0;

    json to_json() const;
    VerificationReport verification(double tolerance) const;
};

HardySteinReport hardy_stein_rhs(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                 const GridFunction& f, const PExponent& p);

json grid_json(const Grid& g);
json quadrature_json(const GridJumpQuadrature& jq, const TimeQuadrature& tq);

}  // namespace levy
