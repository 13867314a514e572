#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "levy/grid.hpp"
#include "levy/levy_model.hpp"

namespace levy {

struct JumpNode {
    Vec2 y;
    double w;
};

// Weight applied to nu(dy) before integration; empty means 1.
using YWeight = std::function<double(const Vec2&)>;

// One ray family of the measure: the unit direction, the share of the
// inner-ball second moment and of the tail mass it carries.
struct RayShare {
    Vec2 direction;
    double scale;  // multiplier of model.ray_density along this ray
    double inner_moment;
    double tail_mass;
};

// Symmetric nodes for int_{eps<|y|<rmax} g(y) nu(dy), plus the analytic pieces
// needed to complete symbol evaluations: the inner-ball Taylor term and the
// tail beyond rmax.
struct JumpQuadrature {
    LevyModel model;
    double eps;
    double rmax;
    int n_radial;
    int n_angular;
    std::vector<JumpNode> nodes;
    std::vector<RayShare> rays;
    // Radial rule for int rho(r) dr on [eps, rmax]; used for the exact angular
    // average 2 pi (1 - J0(|xi| r)) in two-dimensional radial models.
    std::vector<double> radii;
    std::vector<double> radial_weights;

    double sum(const std::function<double(const Vec2&)>& g) const;
};

JumpQuadrature build_jump_quadrature(const LevyModel& model, double eps, double rmax, int n_radial,
                                     int n_angular = 32);

// sum w_k k(y_k) (1 - cos(xi.y_k)) + inner Taylor completion + tail, with the
// optional weight k applied consistently to all three pieces.
double symbol_quadrature(const JumpQuadrature& q, const Vec2& xi, const YWeight& k = {});

// Quadrature value of int (1 ^ |y|^2) nu(dy), including inner ball and tail.
double check_levy_condition(const LevyModel& model, const JumpQuadrature& q);

struct HartmanWintnerResult {
    std::vector<std::pair<double, double>> ratios;  // (|xi|, psi(xi)/log|xi|)
    bool increasing;
};

HartmanWintnerResult check_hartman_wintner(const LevyModel& model, const std::vector<double>& xi_magnitudes);

// Gauss-Legendre nodes and weights (8 points) mapped to [a, b].
void gauss_legendre_panel(double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace levy
