#include "levy/levy_model.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "levy/errors.hpp"

namespace levy {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;

void check_dim(int d) {
    if (d != 1 && d != 2) throw std::invalid_argument("model dimension must be 1 or 2");
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in (0, 2)");
}

}  // namespace

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::IsotropicStable: return "isotropic-stable";
        case ModelKind::TemperedStable: return "tempered-stable";
        case ModelKind::TruncatedStable: return "truncated-stable";
        case ModelKind::CompoundPoisson: return "compound-poisson";
        case ModelKind::AxisStable: return "axis-stable";
    }
    return "unknown";
}

ModelKind parse_model_kind(const std::string& s) {
    for (ModelKind k : {ModelKind::IsotropicStable, ModelKind::TemperedStable, ModelKind::TruncatedStable,
                        ModelKind::CompoundPoisson, ModelKind::AxisStable})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown model kind '" + s + "'");
}

double stable_constant(int d, double alpha) {
    check_dim(d);
    check_alpha(alpha);
    return std::pow(2.0, alpha) * std::tgamma((d + alpha) / 2.0) * std::pow(std::numbers::pi, -d / 2.0) /
           std::abs(std::tgamma(-alpha / 2.0));
}

LevyModel LevyModel::isotropic_stable(int d, double alpha) {
    LevyModel m;
    m.kind_ = ModelKind::IsotropicStable;
    m.d_ = d;
    m.alpha_ = alpha;
    m.A_ = stable_constant(d, alpha);
    return m;
}

LevyModel LevyModel::tempered_stable(int d, double alpha, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("tempering lambda must be >= 0");
    LevyModel m = isotropic_stable(d, alpha);
    m.kind_ = ModelKind::TemperedStable;
    m.lambda_ = lambda;
    return m;
}

LevyModel LevyModel::truncated_stable(int d, double alpha, double R) {
    if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("truncation radius must be positive");
    LevyModel m = isotropic_stable(d, alpha);
    m.kind_ = ModelKind::TruncatedStable;
    m.R_ = R;
    return m;
}

LevyModel LevyModel::axis_stable(int d, double alpha) {
    LevyModel m;
    check_dim(d);
    m.kind_ = ModelKind::AxisStable;
    m.d_ = d;
    m.alpha_ = alpha;
    m.A_ = stable_constant(1, alpha);
    return m;
}

LevyModel LevyModel::compound_poisson(int d, std::vector<Atom> atoms) {
    check_dim(d);
    if (atoms.empty()) throw std::invalid_argument("compound-poisson model needs at least one atom");
    for (const Atom& a : atoms) {
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw std::invalid_argument("atom masses must be positive");
        if (norm(a.location) == 0.0) throw std::invalid_argument("atoms must avoid the origin");
        if (d == 1 && a.location[1] != 0.0) throw std::invalid_argument("1-D atoms must have zero second coordinate");
    }
    for (const Atom& a : atoms) {
        bool paired = false;
        for (const Atom& b : atoms) {
            if (std::abs(a.location[0] + b.location[0]) <= 1e-12 && std::abs(a.location[1] + b.location[1]) <= 1e-12 &&
                std::abs(a.mass - b.mass) <= 1e-12 * a.mass) {
                paired = true;
                break;
            }
        }
        if (!paired) throw std::invalid_argument("compound-poisson atoms must form a symmetric set");
    }
    LevyModel m;
    m.kind_ = ModelKind::CompoundPoisson;
    m.d_ = d;
    m.alpha_ = 0.0;
    m.atoms_ = std::move(atoms);
    return m;
}

bool LevyModel::is_radial() const {
    return kind_ == ModelKind::IsotropicStable || kind_ == ModelKind::TemperedStable ||
           kind_ == ModelKind::TruncatedStable;
}

bool LevyModel::has_closed_form() const {
    return kind_ == ModelKind::IsotropicStable || kind_ == ModelKind::CompoundPoisson ||
           kind_ == ModelKind::AxisStable;
}

double LevyModel::ray_density(double r) const {
    if (kind_ == ModelKind::CompoundPoisson || !(r > 0.0)) return 0.0;
    double v = A_ * std::pow(r, -1.0 - alpha_);
    if (kind_ == ModelKind::TemperedStable) v *= std::exp(-lambda_ * r);
    if (kind_ == ModelKind::TruncatedStable && r > R_) v = 0.0;
    return v;
}

double LevyModel::ray_count() const {
    if (kind_ == ModelKind::AxisStable) return 2.0 * d_;
    return d_ == 1 ? 2.0 : 2.0 * std::numbers::pi;
}

double LevyModel::density(const Vec2& y) const {
    const double r = norm(y);
    if (r == 0.0) throw std::domain_error("Levy density is undefined at the origin");
    switch (kind_) {
        case ModelKind::CompoundPoisson: return 0.0;
        case ModelKind::AxisStable:
            if (d_ == 2 && y[0] != 0.0 && y[1] != 0.0) return 0.0;
            return ray_density(r);
        default: return ray_density(r) * (d_ == 2 ? 1.0 / r : 1.0);
    }
}

double LevyModel::symbol_closed_form(const Vec2& xi) const {
    switch (kind_) {
        case ModelKind::IsotropicStable: {
            const double r = d_ == 1 ? std::abs(xi[0]) : norm(xi);
            return r == 0.0 ? 0.0 : std::pow(r, alpha_);
        }
        case ModelKind::AxisStable: {
            double s = 0.0;
            for (int i = 0; i < d_; ++i)
                if (xi[i] != 0.0) s += std::pow(std::abs(xi[i]), alpha_);
            return s;
        }
        case ModelKind::CompoundPoisson: {
            double s = 0.0;
            for (const Atom& a : atoms_) s += a.mass * (1.0 - std::cos(dot(xi, a.location)));
            return s;
        }
        default: throw UnsupportedError("no closed-form symbol for " + to_string(kind_) + "; use quadrature");
    }
}

double LevyModel::shell_mass(double a, double b) const {
    if (!(a >= 0.0) || !(b >= a)) throw std::invalid_argument("shell bounds must satisfy 0 <= a <= b");
    if (kind_ == ModelKind::CompoundPoisson) {
        double s = 0.0;
        for (const Atom& at : atoms_) {
            const double r = norm(at.location);
            if (r > a && r < b) s += at.mass;
        }
        return s;
    }
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    if (a == b) return 0.0;
    double hi = b;
    if (kind_ == ModelKind::TruncatedStable) {
        if (a >= R_) return 0.0;
        hi = std::min(b, R_);
    }
    if (kind_ != ModelKind::TemperedStable || lambda_ == 0.0) {
        const double ia = std::pow(a, -alpha_);
        const double ib = std::isinf(hi) ? 0.0 : std::pow(hi, -alpha_);
        return ray_count() * A_ * (ia - ib) / alpha_;
    }
    auto f = [this](double r) { return ray_density(r); };
    double v = 0.0;
    if (std::isinf(hi)) {
        exp_sinh<double> es;
        v = es.integrate([&](double u) { return f(a + u); });
    } else {
        v = gauss_kronrod<double, 31>::integrate(f, a, hi, 15, 1e-14);
    }
    return ray_count() * v;
}

double LevyModel::ray_moment(double n, double eps) const {
    if (kind_ == ModelKind::CompoundPoisson) return 0.0;
    if (!(n > alpha_)) throw std::domain_error("ray moment order must exceed alpha");
    double e = eps;
    if (kind_ == ModelKind::TruncatedStable) e = std::min(eps, R_);
    if (kind_ != ModelKind::TemperedStable || lambda_ == 0.0) return A_ * std::pow(e, n - alpha_) / (n - alpha_);
    tanh_sinh<double> ts;
    const double lam = lambda_, al = alpha_;
    return A_ * ts.integrate([=](double r) { return std::pow(r, n - 1.0 - al) * std::exp(-lam * r); }, 0.0, e);
}

double LevyModel::inner_moment(double eps) const {
    if (kind_ == ModelKind::CompoundPoisson) {
        double s = 0.0;
        for (const Atom& a : atoms_) {
            const double r = norm(a.location);
            if (r < eps) s += a.mass * r * r;
        }
        return s;
    }
    return ray_count() * ray_moment(2.0, eps);
}

namespace {

// int_0^eps (1 - cos(w r)) rho(r) dr   (bessel = false)
// int_0^eps (1 - J0(w r)) rho(r) dr    (bessel = true)
double inner_ray_symbol(const LevyModel& m, double eps, double w, bool bessel) {
    if (w == 0.0) return 0.0;
    if (w * eps <= 4.0) {
        double sum = 0.0, coef = 1.0;
        for (int k = 1; k < 80; ++k) {
            if (bessel)
                coef *= 0.25 / (double(k) * k);
            else
                coef /= double(2 * k - 1) * (2 * k);
            const double term = coef * std::pow(w, 2 * k) * m.ray_moment(2.0 * k, eps);
            sum += (k % 2 == 1 ? term : -term);
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    tanh_sinh<double> ts;
    auto g = [&](double r) {
        const double c = bessel ? std::cyl_bessel_j(0.0, w * r) : std::cos(w * r);
        return (1.0 - c) * m.ray_density(r);
    };
    return ts.integrate(g, 0.0, eps);
}

}  // namespace

double LevyModel::inner_symbol(double eps, const Vec2& xi) const {
    switch (kind_) {
        case ModelKind::CompoundPoisson: {
            double s = 0.0;
            for (const Atom& a : atoms_)
                if (norm(a.location) < eps) s += a.mass * (1.0 - std::cos(dot(xi, a.location)));
            return s;
        }
        case ModelKind::AxisStable: {
            double s = 0.0;
            for (int i = 0; i < d_; ++i) s += 2.0 * inner_ray_symbol(*this, eps, std::abs(xi[i]), false);
            return s;
        }
        default:
            if (d_ == 1) return 2.0 * inner_ray_symbol(*this, eps, std::abs(xi[0]), false);
            return 2.0 * std::numbers::pi * inner_ray_symbol(*this, eps, norm(xi), true);
    }
}

double LevyModel::total_mass() const {
    if (kind_ != ModelKind::CompoundPoisson) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.mass;
    return s;
}

}  // namespace levy
