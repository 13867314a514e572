#pragma once

#include <span>
#include <vector>

#include "levy/grid.hpp"
#include "levy/jump_quadrature.hpp"
#include "levy/levy_model.hpp"
#include "levy/report.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

// f^(xi) = int e^{i xi.x} f(x) dx, discretised as h^d sum_i e^{i xi_k.x_i} f_i.
SpectrumFunction forward_transform(const GridFunction& f);
// (2 pi)^{-d} sum_k e^{-i xi_k.x} F_k (pi/L)^d
GridFunction inverse_transform(const SpectrumFunction& F);

struct SymbolGrid {
    Grid grid;
    std::vector<double> psi;  // FFT-ordered dual grid
    std::string source;       // "closed-form" or "quadrature"

    // Smallest psi over nonzero frequencies where psi > kernel_tol.
    double min_positive() const;
    // Nonzero frequencies where psi vanishes (the kernel of the generator beyond constants).
    std::size_t degenerate_modes() const;
    double max_value() const;
    static constexpr double kernel_tol = 1e-13;
};

SymbolGrid build_symbol_grid(const LevyModel& model, const Grid& grid, const JumpQuadrature* quad = nullptr);
SymbolGrid symbol_grid_from(const Grid& grid, const std::function<double(const Vec2&)>& psi, std::string source);

GridFunction transition_density(const SymbolGrid& symbol, double t);
GridFunction semigroup_apply(const SymbolGrid& symbol, double t, const GridFunction& f);
GridFunction spectral_shift(const GridFunction& f, const Vec2& y);
GridFunction generator_apply(const GridJumpQuadrature& q, const GridFunction& f);
// Spectral gradient component a (0 or 1); the Nyquist mode is dropped.
GridFunction spectral_derivative(const GridFunction& f, int axis);

// Projection onto the frequencies where psi vanishes: the t -> infinity limit of P_t f
// on the periodic grid (the mean, for non-degenerate symbols).
GridFunction equilibrium_projection(const SymbolGrid& symbol, const GridFunction& f);

std::vector<double> log_spaced_times(double t_min, double t_max, int per_decade);
GridFunction maximal_function(const SymbolGrid& symbol, const GridFunction& f, std::span<const double> times);

double cauchy_closed_form(int d, double t, const Vec2& x);
// Sum of the Cauchy density over all periodic images: the exact torus density.
double cauchy_periodized(int d, double t, const Vec2& x, double L);

VerificationReport subordination_check_alpha1(const LevyModel& model, const Grid& grid, double t);

}  // namespace levy
