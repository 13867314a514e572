#pragma once

#include <array>
#include <vector>

#include "levy/grid.hpp"
#include "levy/jump_quadrature.hpp"
#include "levy/levy_model.hpp"

namespace levy {

struct LatticeNode {
    int o0;
    int o1;
    double w;
};

// Inner-ball completion along one ray: the ray carries `scale * ray_density`
// and its unit direction.
struct InnerRay {
    Vec2 direction;
    double scale;
    double weight;  // y-weight evaluated on the inner ball
};

struct GridQuadratureOptions {
    double eps = 0.0;         // 0: half a grid spacing
    int near_cells = 8;       // near field reaches (m + 1/2) h, m >= near_cells
    double near_radius = 1.0; // and m h >= near_radius
    int log_panels_per_octave = 1;
    int n_angular = 32;
    double fold_extent = 64.0;     // 1-D/axis folding radius in units of L
    double fold_extent_2d = 4.0;   // 2-D isotropic folding radius in units of L
    bool taylor_completion = true;

    bool operator==(const GridQuadratureOptions&) const = default;
};

// Jump quadrature adapted to the periodic grid. Near-field nodes (eps <= |y| <= r_near)
// are applied by band-limited shifts; all of nu beyond r_near is folded onto
// lattice displacements modulo the period and applied by index shifts; the
// ball |y| < eps is completed by its second-order Taylor term.
struct GridJumpQuadrature {
    Grid grid;
    LevyModel model;
    double eps;
    double r_near;
    bool taylor;
    std::vector<JumpNode> near;
    std::vector<LatticeNode> far;
    std::vector<InnerRay> inner_rays;
    std::array<double, 4> inner_matrix;  // sum over rays of weight * m2 * e e^T, row-major
    GridQuadratureOptions options;

    // Symbol implied by the node set: what the quadrature integrates exactly.
    double implied_symbol(const Vec2& xi) const;
    double total_far_weight() const;
};

// implied_symbol at every dual-grid frequency (FFT order); the lattice part is one FFT.
std::vector<double> implied_symbol_grid(const GridJumpQuadrature& q);

GridJumpQuadrature build_grid_quadrature(const LevyModel& model, const Grid& grid,
                                         const GridQuadratureOptions& opts = {}, const YWeight& k = {});

}  // namespace levy
