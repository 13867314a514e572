#include "levy/workbench.hpp"

namespace levy {

Workbench make_workbench(const LevyModel& model, const Grid& grid, const GridQuadratureOptions& jopts,
                         const TimeQuadratureOptions& topts) {
    SymbolGrid symbol = build_symbol_grid(model, grid);
    GridJumpQuadrature jq = build_grid_quadrature(model, grid, jopts);
    TimeQuadrature tq = make_time_quadrature(symbol, topts);
    return {std::move(symbol), std::move(jq), std::move(tq)};
}

}  // namespace levy
