#pragma once

#include "levy/grid.hpp"
#include "levy/levy_model.hpp"
#include "levy/spectral.hpp"
#include "levy/time_quadrature.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

// Everything the grid identities need for one (model, grid) pair.
struct Workbench {
    SymbolGrid symbol;
    GridJumpQuadrature jq;
    TimeQuadrature tq;

    const Grid& grid() const { return symbol.grid; }
    const LevyModel& model() const { return jq.model; }
};

Workbench make_workbench(const LevyModel& model, const Grid& grid, const GridQuadratureOptions& jopts = {},
                         const TimeQuadratureOptions& topts = {});

}  // namespace levy
