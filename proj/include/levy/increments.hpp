#pragma once

#include <functional>
#include <vector>

#include "levy/grid.hpp"
#include "levy/kernels.hpp"
#include "levy/spectral.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy {

// Time-major evaluation of y-integrated increment functionals of P_t f (and P_t g):
// for each time node the spectrum e^{-t psi} f^ is formed once, every near-field
// node reuses it through a phase multiply, lattice nodes use index shifts, and
// the inner ball is completed from the spectral gradient.
class IncrementEngine {
public:
    // Lattices above this size apply the terms that are linear in functions of
    // u(x+o) by FFT convolution; the indicator term is split into |u| buckets,
    // convolved below x's bucket and summed directly inside it.
    static constexpr std::size_t kDirectLatticeMax = 1024;

    IncrementEngine(const SymbolGrid& symbol, const GridJumpQuadrature& quad);

    using Visitor = std::function<void(std::size_t j, double t, const kernels::Accumulators& acc,
                                       const std::vector<double>& u)>;

    void evaluate(const std::vector<double>& times, const kernels::Terms& terms, const GridFunction& f,
                  const GridFunction* g, const Visitor& visit) const;

    const SymbolGrid& symbol() const { return symbol_; }
    const GridJumpQuadrature& quadrature() const { return quad_; }

private:
    const SymbolGrid& symbol_;
    const GridJumpQuadrature& quad_;
    kernels::InnerSpec inner_;
    std::vector<std::vector<cplx>> phases_;  // per near node, per axis: e^{-i xi_k y_a}
    // Large lattices: spectrum of the lattice weights for the convolution path.
    bool lattice_fft_ = false;
    std::vector<double> lattice_w_;  // dense, indexed by wrapped offset
    std::vector<cplx> lattice_hat_;
    double lattice_total_ = 0.0;
    std::vector<std::size_t> neg_;  // index of -k

    using Convolver = std::function<void(const std::vector<double>&, std::vector<double>&)>;
    void lattice_gt(const std::vector<double>& u, const Convolver& conv, std::vector<double>& gt) const;
};

}  // namespace levy
