#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "levy/report.hpp"
#include "levy/spectral.hpp"
#include "levy/time_quadrature.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

enum class SquareKind { G, Gtilde, Gstar, GstarT };
std::string to_string(SquareKind k);

struct SquareFunctionResult {
    SquareKind kind;
    GridFunction values;
    double t_lo;
    double t_hi;
    json quadrature;

    json to_json() const;  // metadata only; the field itself is exported separately
};

SquareFunctionResult square_G(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                              const GridFunction& f);
SquareFunctionResult square_Gtilde(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                   const GridFunction& f);
// T = infinity gives G_*, finite T the truncated G_{*,T}.
SquareFunctionResult square_Gstar(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                  const GridFunction& f, double T = std::numeric_limits<double>::infinity());

// G and G~ from one pass over the time nodes.
struct SquarePair {
    SquareFunctionResult G;
    SquareFunctionResult Gtilde;
};
SquarePair square_G_pair(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                         const GridFunction& f);

// ||f - Pi_0 f||^2 = ||G f||^2 = 2 ||G~ f||^2.
VerificationReport isometry_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                  const GridFunction& f, double tol = 1e-2);
// <f - Pi_0 f, g - Pi_0 g> against the time/jump/space integral of the increment
// products. Passes on relative error <= tol, or absolute error <= abs_tol ||f|| ||g||.
VerificationReport polarization_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                      const TimeQuadrature& tq, const GridFunction& f, const GridFunction& g,
                                      double tol = 1e-2, double abs_tol = 1e-4);

struct NormEquivalenceReport {
    double p = 2.0;
    json family;
    std::vector<std::string> labels;
    std::vector<double> ratios;  // ||G~ f||_p / ||f - Pi_0 f||_p
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool refined = false;
    double drift = 0.0;  // max relative move of the endpoints under refinement
    double drift_tol = 0.05;
    std::vector<std::string> notes;

    bool passed() const;
    json to_json() const;
    VerificationReport verification() const;
};

NormEquivalenceReport norm_equivalence_report(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                              const TimeQuadrature& tq, std::span<const GridFunction> family,
                                              double p, const std::vector<std::string>& labels = {});
// Records the endpoint drift of `coarse` against the same family on a refined grid.
void attach_refinement(NormEquivalenceReport& coarse, const NormEquivalenceReport& fine, double drift_tol = 0.05);

// |<f, h>| <= 2 int G~(f) G(h) + slack, with the Hoelder split 2 ||G~ f||_p ||G h||_q.
VerificationReport duality_bound_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                       const TimeQuadrature& tq, const GridFunction& f, const GridFunction& h,
                                       double p, double slack = 1e-8);

}  // namespace levy
