#include "levy/jump_quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "levy/errors.hpp"

namespace levy {

namespace {

constexpr double uniform_panel_length = 0.25;

std::vector<RayShare> ray_family(const LevyModel& m, double eps, double rmax, int n_angular) {
    std::vector<RayShare> rays;
    if (m.kind() == ModelKind::CompoundPoisson) return rays;
    std::vector<std::pair<Vec2, double>> dirs;
    if (m.kind() == ModelKind::AxisStable) {
        for (int i = 0; i < m.dim(); ++i)
            for (double s : {1.0, -1.0}) {
                Vec2 e{0.0, 0.0};
                e[i] = s;
                dirs.push_back({e, 1.0});
            }
    } else if (m.dim() == 1) {
        dirs = {{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}};
    } else {
        if (n_angular < 2 || n_angular % 2 != 0) throw std::invalid_argument("n_angular must be even and >= 2");
        const double dth = 2.0 * std::numbers::pi / n_angular;
        for (int j = 0; j < n_angular; ++j) dirs.push_back({{std::cos(j * dth), std::sin(j * dth)}, dth});
    }
    const double m2 = m.ray_moment(2.0, eps);
    const double tail = std::isinf(rmax) ? 0.0 : m.tail_mass(rmax) / m.ray_count();
    for (auto& [e, scale] : dirs) rays.push_back({e, scale, scale * m2, scale * tail});
    return rays;
}

// int_R^inf cos(w r) rho(r) dr along one ray.
double ray_tail_cos(const LevyModel& m, double R, double w) {
    if (m.kind() == ModelKind::TruncatedStable) {
        if (R >= m.radius()) return 0.0;
        std::vector<double> x, wt;
        const int panels = std::max(1, int(std::ceil((m.radius() - R) / uniform_panel_length)));
        const double len = (m.radius() - R) / panels;
        double s = 0.0;
        for (int p = 0; p < panels; ++p) {
            gauss_legendre_panel(R + p * len, R + (p + 1) * len, x, wt);
            for (std::size_t i = 0; i < x.size(); ++i) s += wt[i] * std::cos(w * x[i]) * m.ray_density(x[i]);
        }
        return s;
    }
    w = std::abs(w);
    if (w == 0.0) return m.tail_mass(R) / m.ray_count();
    // Rotate the contour r = R + i u / w so the oscillation becomes decay.
    const double A = m.density_constant(), al = m.alpha();
    const double lam = m.kind() == ModelKind::TemperedStable ? m.lambda() : 0.0;
    auto g = [&](double u) {
        const std::complex<double> z(R, u / w);
        return std::exp(-u) * A * std::pow(z, -1.0 - al) * std::exp(-lam * z);
    };
    boost::math::quadrature::exp_sinh<double> es;
    const double re = es.integrate([&](double u) { return g(u).real(); });
    const double im = es.integrate([&](double u) { return g(u).imag(); });
    const std::complex<double> val = std::complex<double>(0.0, 1.0 / w) * std::exp(std::complex<double>(0.0, w * R)) *
                                     std::complex<double>(re, im);
    return val.real();
}

double apply_weight(const YWeight& k, const Vec2& y) { return k ? k(y) : 1.0; }

// int_R^inf J0(w r) rho(r) dr for a two-dimensional radial model. Panels up to
// U with w U >= 2000, then the leading Hankel term by contour rotation.
double ray_tail_j0(const LevyModel& m, double R, double w) {
    if (w == 0.0) return m.tail_mass(R) / m.ray_count();
    double hi = std::max(R, 2000.0 / w);
    if (m.kind() == ModelKind::TruncatedStable) {
        if (R >= m.radius()) return 0.0;
        hi = m.radius();
    }
    std::vector<double> x, wt;
    const double step = std::min(uniform_panel_length * 4.0, std::numbers::pi / (2.0 * w));
    const int panels = std::max(1, int(std::ceil((hi - R) / step)));
    const double len = (hi - R) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        gauss_legendre_panel(R + p * len, R + (p + 1) * len, x, wt);
        for (std::size_t i = 0; i < x.size(); ++i)
            s += wt[i] * boost::math::cyl_bessel_j(0, w * x[i]) * m.ray_density(x[i]);
    }
    if (m.kind() == ModelKind::TruncatedStable) return s;
    // J0(x) ~ Re sqrt(2/(pi x)) e^{i(x - pi/4)}; rotate r = U + i u / w.
    const double A = m.density_constant(), al = m.alpha();
    const double lam = m.kind() == ModelKind::TemperedStable ? m.lambda() : 0.0;
    auto g = [&](double u) {
        const std::complex<double> z(hi, u / w);
        return std::exp(-u) * std::sqrt(2.0 / (std::numbers::pi * w * z)) * A * std::pow(z, -1.0 - al) *
               std::exp(-lam * z);
    };
    boost::math::quadrature::exp_sinh<double> es;
    const double re = es.integrate([&](double u) { return g(u).real(); });
    const double im = es.integrate([&](double u) { return g(u).imag(); });
    const std::complex<double> val = std::complex<double>(0.0, 1.0 / w) *
                                     std::exp(std::complex<double>(0.0, w * hi - std::numbers::pi / 4.0)) *
                                     std::complex<double>(re, im);
    return s + val.real();
}

}  // namespace

void gauss_legendre_panel(double a, double b, std::vector<double>& x, std::vector<double>& w) {
    using rule = boost::math::quadrature::gauss<double, 8>;
    const auto& ab = rule::abscissa();
    const auto& wt = rule::weights();
    x.clear();
    w.clear();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0.0) {
            x.push_back(c);
            w.push_back(h * wt[i]);
            continue;
        }
        x.push_back(c - h * ab[i]);
        w.push_back(h * wt[i]);
        x.push_back(c + h * ab[i]);
        w.push_back(h * wt[i]);
    }
}

double JumpQuadrature::sum(const std::function<double(const Vec2&)>& g) const {
    double s = 0.0;
    for (const JumpNode& n : nodes) s += n.w * g(n.y);
    return s;
}

JumpQuadrature build_jump_quadrature(const LevyModel& model, double eps, double rmax, int n_radial, int n_angular) {
    if (!(eps > 0.0)) throw std::invalid_argument("inner cutoff eps must be positive");
    if (!(eps < rmax)) throw std::invalid_argument("inner cutoff eps must be below rmax");
    if (n_radial < 2 || n_angular < 2) throw std::invalid_argument("node counts must be >= 2");
    JumpQuadrature q{model, eps, rmax, n_radial, n_angular, {}, {}, {}, {}};
    if (model.kind() == ModelKind::CompoundPoisson) {
        for (const Atom& a : model.atoms()) q.nodes.push_back({a.location, a.mass});
        return q;
    }
    q.rays = ray_family(model, eps, rmax, n_angular);

    std::vector<double> r, wr, x, w;
    const double r1 = std::clamp(1.0, eps, rmax);
    if (r1 > eps) {
        const int panels = std::max(1, (n_radial + 7) / 8);
        const double s0 = std::log(eps), ds = (std::log(r1) - s0) / panels;
        for (int p = 0; p < panels; ++p) {
            gauss_legendre_panel(s0 + p * ds, s0 + (p + 1) * ds, x, w);
            for (std::size_t i = 0; i < x.size(); ++i) {
                r.push_back(std::exp(x[i]));
                wr.push_back(w[i] * std::exp(x[i]));
            }
        }
    }
    if (rmax > r1) {
        const int panels = int(std::ceil((rmax - r1) / uniform_panel_length));
        const double len = (rmax - r1) / panels;
        for (int p = 0; p < panels; ++p) {
            gauss_legendre_panel(r1 + p * len, r1 + (p + 1) * len, x, w);
            r.insert(r.end(), x.begin(), x.end());
            wr.insert(wr.end(), w.begin(), w.end());
        }
    }
    for (const RayShare& ray : q.rays)
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double wk = ray.scale * wr[i] * model.ray_density(r[i]);
            if (wk > 0.0) q.nodes.push_back({{ray.direction[0] * r[i], ray.direction[1] * r[i]}, wk});
        }
    if (model.dim() == 2 && model.is_radial())
        for (std::size_t i = 0; i < r.size(); ++i) {
            q.radii.push_back(r[i]);
            q.radial_weights.push_back(wr[i] * model.ray_density(r[i]));
        }
    return q;
}

double symbol_quadrature(const JumpQuadrature& q, const Vec2& xi, const YWeight& k) {
    if (xi[0] == 0.0 && xi[1] == 0.0) return 0.0;
    double s = 0.0;
    if (!k && !q.radii.empty()) {
        const double w = norm(xi), two_pi = 2.0 * std::numbers::pi;
        for (std::size_t i = 0; i < q.radii.size(); ++i)
            s += q.radial_weights[i] * (1.0 - boost::math::cyl_bessel_j(0, w * q.radii[i]));
        s += 0.5 * w * w * q.model.ray_moment(2.0, q.eps) * 0.5;
        const double tail = q.model.tail_mass(q.rmax) / q.model.ray_count();
        if (tail > 1e-17) s += tail - ray_tail_j0(q.model, q.rmax, w);
        return two_pi * s;
    }
    for (const JumpNode& n : q.nodes) s += n.w * apply_weight(k, n.y) * (1.0 - std::cos(dot(xi, n.y)));
    for (const RayShare& ray : q.rays) {
        const double proj = dot(xi, ray.direction);
        const Vec2 inner_pt{0.5 * q.eps * ray.direction[0], 0.5 * q.eps * ray.direction[1]};
        s += apply_weight(k, inner_pt) * 0.5 * proj * proj * ray.inner_moment;
        if (ray.tail_mass > 0.0) {
            const Vec2 tail_pt{2.0 * q.rmax * ray.direction[0], 2.0 * q.rmax * ray.direction[1]};
            const double tail = ray.tail_mass - ray.scale * ray_tail_cos(q.model, q.rmax, proj);
            s += apply_weight(k, tail_pt) * tail;
        }
    }
    return s;
}

double check_levy_condition(const LevyModel& model, const JumpQuadrature& q) {
    double s = q.sum([](const Vec2& y) { return std::min(1.0, dot(y, y)); });
    if (model.kind() == ModelKind::CompoundPoisson) return s;
    s += model.inner_moment(std::min(q.eps, 1.0));
    if (q.eps > 1.0) s += model.shell_mass(1.0, q.eps);
    if (q.rmax >= 1.0)
        s += model.tail_mass(q.rmax);
    else
        s += model.inner_moment(1.0) - model.inner_moment(q.rmax) + model.tail_mass(1.0);
    return s;
}

HartmanWintnerResult check_hartman_wintner(const LevyModel& model, const std::vector<double>& xi_magnitudes) {
    HartmanWintnerResult out{{}, true};
    std::optional<JumpQuadrature> q;
    if (!model.has_closed_form()) q = build_jump_quadrature(model, 1e-4, 200.0, 64, 64);
    for (double r : xi_magnitudes) {
        if (!(r >= 2.0)) throw std::invalid_argument("Hartman-Wintner samples need |xi| >= 2");
        const Vec2 xi{r, 0.0};
        const double psi = q ? symbol_quadrature(*q, xi) : model.symbol_closed_form(xi);
        out.ratios.push_back({r, psi / std::log(r)});
    }
    const std::size_t start = out.ratios.size() / 2;
    for (std::size_t i = std::max<std::size_t>(start, 1); i < out.ratios.size(); ++i)
        if (!(out.ratios[i].second > out.ratios[i - 1].second)) out.increasing = false;
    if (out.ratios.size() < 2) out.increasing = false;
    return out;
}

}  // namespace levy
