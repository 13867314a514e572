#include "levy/divergence.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "levy/errors.hpp"
#include "levy/jump_quadrature.hpp"
#include "levy/levy_model.hpp"
#include "levy/square_fn.hpp"
#include "levy/workbench.hpp"

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;

double profile_value(ProbeProfile p, double r) {
    if (r >= 1.0) return 0.0;
    if (p == ProbeProfile::Singular) return std::pow(r, -1.5);
    return std::exp(-1.0 / (1.0 - r * r));
}

// int_0^{2 pi} (t^2 + r^2 + rho^2 - 2 r rho cos th)^{-3/2} d th
double ring_integral(double t, double r, double rho) {
    const double lo = t * t + (r - rho) * (r - rho);
    const double hi = t * t + (r + rho) * (r + rho);
    const double k2 = 4.0 * r * rho / hi;
    return 4.0 * boost::math::ellint_2(std::sqrt(std::min(k2, 1.0))) / (lo * std::sqrt(hi));
}

// Gauss-Legendre panels on [a, b] graded geometrically (ratio 3) toward both ends,
// smallest panel `floor`.
void graded(double a, double b, double floor, std::vector<double>& x, std::vector<double>& w) {
    if (!(b > a)) return;
    const double m = 0.5 * (a + b);
    const double half = m - a;
    std::vector<double> cuts{0.0};
    for (double c = std::min(floor, half); c < half; c *= 3.0) cuts.push_back(c);
    cuts.push_back(half);
    std::vector<double> px, pw;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        for (int side = 0; side < 2; ++side) {
            const double lo = side == 0 ? a + cuts[i] : b - cuts[i + 1];
            const double hi = side == 0 ? a + cuts[i + 1] : b - cuts[i];
            gauss_legendre_panel(lo, hi, px, pw);
            x.insert(x.end(), px.begin(), px.end());
            w.insert(w.end(), pw.begin(), pw.end());
        }
    }
}

void graded_segments(std::vector<double> cuts, double floor, std::vector<double>& x, std::vector<double>& w) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) graded(cuts[i], cuts[i + 1], floor, x, w);
}

// P_t f at radius r for the radial profile, free-space Cauchy semigroup.
double radial_semigroup(ProbeProfile prof, double t, double r) {
    std::vector<double> x, w;
    const double floor = 1e-3 * t;
    double s = 0.0;
    if (prof == ProbeProfile::Singular) {
        // rho = v^2 removes the rho^{-1/2} endpoint singularity.
        std::vector<double> cuts{0.0, 1.0};
        if (r < 1.0) cuts.push_back(std::sqrt(r));
        graded_segments(cuts, floor, x, w);
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * 2.0 * ring_integral(t, r, x[i] * x[i]);
    } else {
        std::vector<double> cuts{0.0, 1.0};
        if (r < 1.0) cuts.push_back(r);
        graded_segments(cuts, floor, x, w);
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * profile_value(prof, x[i]) * x[i] * ring_integral(t, r, x[i]);
    }
    return t / (2.0 * kPi) * s;
}

// Gamma(t, r) = int (P_t f(z) - P_t f(x))^2 nu(dz - x) at |x| = r, for the Cauchy measure
// c |y|^{-3} dy with the angular integral of |x - z|^{-3} in closed form.
std::vector<double> carre_du_champ(ProbeProfile prof, double t, const std::vector<double>& radii) {
    const double c2 = stable_constant(2, 1.0);
    std::vector<double> cuts{0.0, 0.5, 1.0, 2.0};
    for (double r : radii) cuts.push_back(r);
    std::vector<double> x, w;
    graded_segments(cuts, 1e-3 * t, x, w);
    std::vector<double> ux, uw;
    for (int p = 0; p < 4; ++p) gauss_legendre_panel(0.25 * p, 0.25 * (p + 1), ux, uw);
    for (std::size_t i = 0; i < ux.size(); ++i) {
        x.push_back(2.0 / ux[i]);
        w.push_back(uw[i] * 2.0 / (ux[i] * ux[i]));
    }
    std::vector<double> U(x.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < x.size(); ++i) U[i] = radial_semigroup(prof, t, x[i]);
    std::vector<double> out;
    for (double r : radii) {
        const double ur = radial_semigroup(prof, t, r);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double rho = x[i];
            if (rho == r) continue;
            const double du = U[i] - ur;
            const double kk = 4.0 * r * rho / ((r + rho) * (r + rho));
            const double W = 4.0 * boost::math::ellint_2(std::sqrt(std::min(kk, 1.0))) / ((r - rho) * (r - rho) * (r + rho));
            s += w[i] * du * du * W * rho;
        }
        out.push_back(c2 * s);
    }
    return out;
}

DivergenceProbe radial_probe(std::span<const double> s_values, ProbeProfile prof) {
    DivergenceProbe probe{prof, ProbeRoute::Radial, {{0.5, 0.0}, {1.0, 0.0}}, 10.0, {}};
    std::vector<double> radii;
    for (const Vec2& p : probe.points) radii.push_back(norm(p));
    std::vector<double> cuts(s_values.begin(), s_values.end());
    cuts.push_back(probe.t_max);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // Per window [cuts[i], cuts[i+1]]: int Gamma dt, two GL panels per decade in log t.
    std::vector<std::vector<double>> window(cuts.size() - 1, std::vector<double>(radii.size(), 0.0));
    std::vector<double> x, w;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double la = std::log(cuts[i]), lb = std::log(cuts[i + 1]);
        const int panels = std::max(1, int(std::ceil(2.0 * (lb - la) / std::log(10.0))));
        for (int p = 0; p < panels; ++p) {
            gauss_legendre_panel(la + (lb - la) * p / panels, la + (lb - la) * (p + 1) / panels, x, w);
            for (std::size_t q = 0; q < x.size(); ++q) {
                const double t = std::exp(x[q]);
                const std::vector<double> gam = carre_du_champ(prof, t, radii);
                for (std::size_t k = 0; k < radii.size(); ++k) window[i][k] += w[q] * t * gam[k];
            }
        }
    }
    for (double s : s_values) {
        DivergenceRow row{s, std::vector<double>(radii.size(), 0.0)};
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i] >= s)
                for (std::size_t k = 0; k < radii.size(); ++k) row.values[k] += window[i][k];
        for (double& v : row.values) v = std::sqrt(v);
        probe.rows.push_back(std::move(row));
    }
    return probe;
}

// Average of |x|^{-3/2} over the origin cell [-h/2, h/2]^2.
double origin_cell_average(double h) {
    auto inner = [&](double th) { return 2.0 * std::sqrt(0.5 * h / std::cos(th)); };
    const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inner, 0.0, 0.25 * kPi, 10, 1e-14);
    return 8.0 * q / (h * h);
}

DivergenceProbe grid_probe(const Grid& grid, std::span<const double> s_values, ProbeProfile prof) {
    if (grid.dim() != 2) throw std::invalid_argument("the divergence probe lives in d = 2");
    if (grid.half_width() < 2.0) throw std::invalid_argument("the probe needs L >= 2 to contain the support");
    const double h = grid.h();
    for (double s : s_values)
        if (s < 4.0 * h) {
            std::ostringstream msg;
            msg << "time cutoff s = " << s << " is below the resolvable time 4h = " << 4.0 * h << "; increase N to at least "
                << int(std::exp2(std::ceil(std::log2(8.0 * grid.half_width() / s))));
            throw ResolutionError(msg.str());
        }
    GridFunction f = GridFunction::sample(grid, [&](const Vec2& x) {
        const double r = norm(x);
        return r == 0.0 ? 0.0 : profile_value(prof, r);
    });
    if (prof == ProbeProfile::Singular) f[grid.index(grid.n() / 2, grid.n() / 2)] = origin_cell_average(h);

    const LevyModel cauchy = LevyModel::isotropic_stable(2, 1.0);
    const SymbolGrid symbol = build_symbol_grid(cauchy, grid);
    const GridJumpQuadrature jq = build_grid_quadrature(cauchy, grid);
    DivergenceProbe probe{prof, ProbeRoute::Grid, {}, 0.0, {}};
    std::vector<std::size_t> idx;
    for (const Vec2& p : {Vec2{0.5, 0.0}, Vec2{1.0, 0.0}}) {
        const int i0 = int(std::lround((p[0] + grid.half_width()) / h)), i1 = int(std::lround((p[1] + grid.half_width()) / h));
        idx.push_back(grid.index(i0, i1));
        probe.points.push_back(grid.point(idx.back()));
    }
    for (double s : s_values) {
        TimeQuadratureOptions to;
        to.t_min = s;
        TimeQuadrature tq = make_time_quadrature(symbol, to);
        tq.v.front() -= s;
        probe.t_max = tq.t_max;
        const SquareFunctionResult G = square_G(symbol, jq, tq, f);
        DivergenceRow row{s, {}};
        for (std::size_t i : idx) row.values.push_back(G.values[i]);
        probe.rows.push_back(std::move(row));
    }
    return probe;
}

}  // namespace

json DivergenceProbe::to_json() const {
    json pts = json::array();
    for (const Vec2& p : points) pts.push_back({p[0], p[1]});
    json rows_j = json::array();
    for (const DivergenceRow& r : rows) rows_j.push_back({{"s", r.s}, {"values", r.values}});
    return {{"profile", profile == ProbeProfile::Singular ? "singular" : "smooth"},
            {"route", route == ProbeRoute::Radial ? "radial" : "grid"},
            {"points", pts},
            {"t_max", t_max},
            {"rows", rows_j},
            {"increments", increments()}};
}

std::vector<std::vector<double>> DivergenceProbe::increments() const {
    std::vector<std::vector<double>> inc(points.size());
    for (std::size_t k = 0; k < points.size(); ++k)
        for (std::size_t i = 1; i < rows.size(); ++i) inc[k].push_back(rows[i].values[k] - rows[i - 1].values[k]);
    return inc;
}

DivergenceProbe divergence_probe(const Grid& grid, std::span<const double> s_values, ProbeProfile profile,
                                 ProbeRoute route) {
    if (s_values.empty()) throw std::invalid_argument("no time cutoffs given");
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        if (!(s_values[i] > 0.0)) throw std::invalid_argument("time cutoffs must be positive");
        if (i > 0 && !(s_values[i] < s_values[i - 1])) throw std::invalid_argument("time cutoffs must decrease");
    }
    return route == ProbeRoute::Radial ? radial_probe(s_values, profile) : grid_probe(grid, s_values, profile);
}

VerificationReport divergence_verdict(const DivergenceProbe& probe) {
    VerificationReport r;
    r.identity = probe.profile == ProbeProfile::Singular ? "divergence-probe" : "divergence-contrast";
    r.details = probe.to_json();
    const auto inc = probe.increments();
    bool ok = !inc.empty() && !inc.front().empty();
    double worst = probe.profile == ProbeProfile::Singular ? std::numeric_limits<double>::infinity() : 0.0;
    for (const auto& d : inc) {
        if (d.empty()) continue;
        if (probe.profile == ProbeProfile::Singular) {
            for (double x : d) ok = ok && x > 0.0;
            if (d.size() >= 2) {
                const double ratio = d.back() / d[d.size() - 2];
                worst = std::min(worst, ratio);
                ok = ok && ratio >= 0.5;
            }
        } else {
            const double ratio = d.back() / d.front();
            worst = std::max(worst, ratio);
            ok = ok && std::abs(ratio) <= 0.05;
        }
    }
    r.lhs = worst;
    r.rhs = probe.profile == ProbeProfile::Singular ? 0.5 : 0.05;
    r.rel_error = worst;
    r.tolerance = r.rhs;
    r.passed = ok;
    return r;
}

}  // namespace levy
