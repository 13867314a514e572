#pragma once

#include <limits>
#include <string>
#include <vector>

#include "levy/grid.hpp"

namespace levy {

enum class ModelKind { IsotropicStable, TemperedStable, TruncatedStable, CompoundPoisson, AxisStable };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& s);

struct Atom {
    Vec2 location;
    double mass;
};

// 2^alpha Gamma((d+alpha)/2) pi^(-d/2) / |Gamma(-alpha/2)|
double stable_constant(int d, double alpha);

// Symmetric Levy measure. Radial kinds have density A rho(|y|) with
//   isotropic: |y|^(-d-alpha), tempered: e^(-lambda|y|)|y|^(-d-alpha),
//   truncated: |y|^(-d-alpha) 1{|y| <= R}.
// axis-stable puts a one-dimensional alpha-stable density on every coordinate axis.
class LevyModel {
public:
    static LevyModel isotropic_stable(int d, double alpha);
    static LevyModel tempered_stable(int d, double alpha, double lambda);
    static LevyModel truncated_stable(int d, double alpha, double R);
    static LevyModel compound_poisson(int d, std::vector<Atom> atoms);
    static LevyModel axis_stable(int d, double alpha);

    ModelKind kind() const { return kind_; }
    int dim() const { return d_; }
    double alpha() const { return alpha_; }
    double lambda() const { return lambda_; }
    double radius() const { return R_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    bool is_radial() const;
    bool has_closed_form() const;
    // Density constant: A_{d,-alpha} for radial kinds, A_{1,-alpha} per axis for axis-stable.
    double density_constant() const { return A_; }

    double density(const Vec2& y) const;
    double symbol_closed_form(const Vec2& xi) const;

    // One-dimensional density along a ray, so that the measure of a thin shell
    // (or axis segment) is ray_count() * ray_density(r) dr.
    // 1-D radial: 2 rays, rho(r); 2-D radial: 2 pi, rho(r) r; axis: 2d rays.
    double ray_density(double r) const;
    double ray_count() const;

    // nu(a < |y| < b) summed over all directions.
    double shell_mass(double a, double b) const;
    double tail_mass(double r) const { return shell_mass(r, std::numeric_limits<double>::infinity()); }
    // int_{|y|<eps} |y|^2 nu(dy) summed over all directions.
    double inner_moment(double eps) const;
    // int_{|y|<eps} |y|^n nu(dy) along one ray (per unit ray_count).
    double ray_moment(double n, double eps) const;
    // int_{|y|<eps} (1 - cos(xi.y)) nu(dy).
    double inner_symbol(double eps, const Vec2& xi) const;

    double total_mass() const;

private:
    ModelKind kind_{ModelKind::IsotropicStable};
    int d_{1};
    double alpha_{1.0};
    double lambda_{0.0};
    double R_{0.0};
    double A_{0.0};
    std::vector<Atom> atoms_;
};

}  // namespace levy
