#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "levy/grid.hpp"
#include "levy/torus_quadrature.hpp"

namespace levy::kernels {

// Which per-point functionals of the increments u(x+y) - u(x) to accumulate.
struct Terms {
    bool hs = false;     // w F_p(u(x), u(x+y))
    bool g = false;      // w (du)^2
    bool gt = false;     // w (du)^2 1{|u(x)| > |u(x+y)|}
    bool cross = false;  // w du dv
    double p = 2.0;
};

struct Accumulators {
    std::vector<double> hs, g, gt, cross;
    void reset(std::size_t n, const Terms& t);
};

// Radial profile A r^{-1-alpha} e^{-lambda r} on the inner ball r < eps.
struct RayProfile {
    double A;
    double alpha;
    double lambda;
    // int_0^r s^n A s^{-1-alpha} e^{-lambda s} ds
    double moment(double n, double r) const;
    double density(double r) const;
};

struct InnerSpec {
    RayProfile profile;
    double eps;
    std::vector<InnerRay> rays;
    std::array<double, 4> M;
};

// int_0^eps F_p(u, u + g r) rho(r) dr for the linearised increment along one ray.
double inner_ray_remainder(const RayProfile& prof, double eps, double p, double u, double g);

namespace serial {
void near_node(const Terms& t, double w, std::size_t n, const double* u, const double* du, const double* v,
               const double* dv, Accumulators& acc);
void lattice(const Terms& t, const Grid& grid, std::span<const LatticeNode> nodes, const double* u, const double* v,
             const double* upow, const double* uder, Accumulators& acc);
void inner(const Terms& t, const InnerSpec& spec, std::size_t n, const double* u, const double* gu0, const double* gu1,
           const double* gv0, const double* gv1, Accumulators& acc);
void running_max_abs(double* acc, const double* u, std::size_t n);
}  // namespace serial

namespace parallel {
void near_node(const Terms& t, double w, std::size_t n, const double* u, const double* du, const double* v,
               const double* dv, Accumulators& acc);
void lattice(const Terms& t, const Grid& grid, std::span<const LatticeNode> nodes, const double* u, const double* v,
             const double* upow, const double* uder, Accumulators& acc);
void inner(const Terms& t, const InnerSpec& spec, std::size_t n, const double* u, const double* gu0, const double* gu1,
           const double* gv0, const double* gv1, Accumulators& acc);
void running_max_abs(double* acc, const double* u, std::size_t n);
}  // namespace parallel

// |u|^p and p sign(u)|u|^{p-1}, the precomputed halves of the lattice remainder.
void power_tables(double p, std::size_t n, const double* u, double* upow, double* uder);

}  // namespace levy::kernels
