#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "levy/report.hpp"
#include "levy/spectral.hpp"
#include "levy/time_quadrature.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

enum class ModulatorKind { Constant, TimeIndependent, Separable, MarcinkiewiczSelector };
std::string to_string(ModulatorKind k);

// Bounded phi(t, y). Separable modulators are g(t) k(y); the selector is the
// indicator of coordinate axis j (1-based), which under the axis-stable measure
// with exponent alpha induces the Marcinkiewicz symbol.
struct Modulator {
    ModulatorKind kind = ModulatorKind::Constant;
    std::string label;
    double value = 1.0;
    std::function<double(const Vec2&)> k;
    std::function<double(double)> g;
    int axis = 1;
    double alpha = 1.0;
    double sup_norm = 1.0;

    static Modulator constant(double c);
    static Modulator time_independent(std::function<double(const Vec2&)> k, double sup_norm, std::string label);
    static Modulator separable(std::function<double(double)> g, std::function<double(const Vec2&)> k,
                               double sup_norm, std::string label);
    static Modulator marcinkiewicz_selector(int j, double alpha);

    double operator()(double t, const Vec2& y) const;
    // The y-factor (phi itself unless separable).
    double y_part(const Vec2& y) const;
    double t_part(double t) const;
    // |phi| <= sup_norm on random (t, y); throws std::invalid_argument otherwise.
    void validate(int d, std::size_t samples = 10000, std::uint64_t seed = 7) const;
    json to_json() const;
};

struct MultiplierSymbol {
    Grid grid;
    std::vector<double> m;  // FFT-ordered dual grid
    json provenance;

    double sup() const;
};

MultiplierSymbol symbol_from_phi(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                 const Modulator& phi);

double marcinkiewicz_symbol(double alpha, int j, const Vec2& xi, int d = 2);
MultiplierSymbol marcinkiewicz_closed_form(const Grid& grid, double alpha, int j);

GridFunction apply_multiplier(const MultiplierSymbol& m, const GridFunction& f);

// Weighted increment-product integral; the y-weight enters the jump quadrature.
double pairing_time_domain(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                           const Modulator& phi, const GridFunction& f, const GridFunction& h);
double pairing_fourier_domain(const MultiplierSymbol& m, const GridFunction& f, const GridFunction& h);

VerificationReport pairing_bound_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                       const TimeQuadrature& tq, const Modulator& phi, const GridFunction& f,
                                       const GridFunction& h, double p, double slack = 1e-8);

struct MultiplierNormReport {
    double p;
    std::vector<std::string> labels;
    std::vector<double> ratios;  // ||S f||_p / ||f||_p
    double max_ratio = 0.0;
    double m_sup = 0.0;
    bool refined = false;
    double drift = 0.0;
    double drift_tol = 0.05;

    bool passed() const;
    json to_json() const;
    VerificationReport verification() const;
};

MultiplierNormReport multiplier_norm_report(const MultiplierSymbol& m, std::span<const GridFunction> family, double p,
                                            const std::vector<std::string>& labels = {});
void attach_refinement(MultiplierNormReport& coarse, const MultiplierNormReport& fine, double drift_tol = 0.05);

}  // namespace levy
