#include "levy/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "levy/jump_quadrature.hpp"

#include "levy/remainder.hpp"

namespace levy::kernels {

void Accumulators::reset(std::size_t n, const Terms& t) {
    auto prep = [n](std::vector<double>& v, bool on) { v.assign(on ? n : 0, 0.0); };
    prep(hs, t.hs);
    prep(g, t.g);
    prep(gt, t.gt);
    prep(cross, t.cross);
}

double RayProfile::density(double r) const { return A * std::pow(r, -1.0 - alpha) * std::exp(-lambda * r); }

double RayProfile::moment(double n, double r) const {
    double sum = 0.0, c = 1.0;
    for (int j = 0; j < 60; ++j) {
        const double e = n - alpha + j;
        const double term = c * std::pow(r, e) / e;
        sum += term;
        if (lambda == 0.0 || std::abs(term) < 1e-17 * std::abs(sum)) break;
        c *= -lambda / (j + 1.0);
    }
    return A * sum;
}

namespace {

double binomial_series(const RayProfile& prof, double p, double u, double g, double r) {
    const double ratio = g / u;
    double c = p * (p - 1.0) / 2.0, rn = ratio * ratio, sum = 0.0;
    for (int n = 2; n < 200; ++n) {
        const double term = c * rn * prof.moment(n, r);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) || c == 0.0) break;
        c *= (p - n) / (n + 1.0);
        rn *= ratio;
    }
    return std::pow(std::abs(u), p) * sum;
}

}  // namespace

double inner_ray_remainder(const RayProfile& prof, double eps, double p, double u, double g) {
    if (g == 0.0) return 0.0;
    if (p == 2.0) return g * g * prof.moment(2.0, eps);
    if (u == 0.0) {
        const double rmin = 1e-12 * eps;
        const double e = p - prof.alpha;
        const double m = std::abs(e) < 1e-12 ? prof.A * std::log(eps / rmin)
                                             : prof.A * (std::pow(eps, e) - std::pow(rmin, e)) / e;
        return std::pow(std::abs(g), p) * m;
    }
    const double q = std::abs(g) * eps / std::abs(u);
    if (q <= 0.5) return binomial_series(prof, p, u, g, eps);
    const double r0 = 0.5 * std::abs(u) / std::abs(g);
    double s = binomial_series(prof, p, u, g, r0);
    std::vector<double> cuts{r0};
    const double rstar = std::abs(u) / std::abs(g);
    if (rstar > r0 && rstar < eps) cuts.push_back(rstar);
    cuts.push_back(eps);
    std::vector<double> x, w;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double la = std::log(cuts[c]), lb = std::log(cuts[c + 1]);
        constexpr int panels = 3;
        for (int k = 0; k < panels; ++k) {
            gauss_legendre_panel(la + (lb - la) * k / panels, la + (lb - la) * (k + 1) / panels, x, w);
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double r = std::exp(x[i]);
                s += w[i] * r * prof.density(r) * taylor_remainder(p, u, u + g * r);
            }
        }
    }
    return s;
}

void power_tables(double p, std::size_t n, const double* u, double* upow, double* uder) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(u[i]);
        upow[i] = std::pow(a, p);
        uder[i] = u[i] == 0.0 ? 0.0 : p * std::pow(a, p - 1.0) * (u[i] > 0 ? 1.0 : -1.0);
    }
}

namespace {

inline void near_point(const Terms& t, double w, std::size_t i, const double* u, const double* du, const double* v,
                       const double* dv, Accumulators& acc) {
    const double a = u[i], d = du[i];
    const double d2 = w * d * d;
    if (t.g) acc.g[i] += d2;
    if (t.gt && std::abs(a) > std::abs(a + d)) acc.gt[i] += d2;
    if (t.cross) acc.cross[i] += w * d * dv[i];
    if (t.hs) acc.hs[i] += w * taylor_remainder(t.p, a, a + d);
    (void)v;
}

inline void lattice_point(const Terms& t, const Grid& grid, std::span<const LatticeNode> nodes, std::size_t i,
                          const double* u, const double* v, const double* upow, const double* uder, Accumulators& acc) {
    const double a = u[i];
    double sg = 0.0, sgt = 0.0, sc = 0.0, sh = 0.0;
    const bool one_d = grid.dim() == 1;
    const int mask = grid.n() - 1;
    for (const LatticeNode& nd : nodes) {
        const std::size_t j = one_d ? std::size_t((int(i) + nd.o0) & mask) : grid.shifted(i, nd.o0, nd.o1);
        const double b = u[j];
        const double d = b - a;
        const double d2 = nd.w * d * d;
        sg += d2;
        if (std::abs(a) > std::abs(b)) sgt += d2;
        if (t.cross) sc += nd.w * d * (v[j] - v[i]);
        if (t.hs) {
            double f;
            if (a == 0.0)
                f = upow[j];
            else if (std::abs(d) >= 1e-2 * std::abs(a)) {
                f = upow[j] - upow[i] - uder[i] * d;
                if (f < 0.0) f = 0.0;
            } else
                f = taylor_remainder(t.p, a, b);
            sh += nd.w * f;
        }
    }
    if (t.g) acc.g[i] += sg;
    if (t.gt) acc.gt[i] += sgt;
    if (t.cross) acc.cross[i] += sc;
    if (t.hs) acc.hs[i] += sh;
}

inline void inner_point(const Terms& t, const InnerSpec& s, std::size_t i, const double* u, const double* gu0,
                        const double* gu1, const double* gv0, const double* gv1, Accumulators& acc) {
    const double a0 = gu0[i], a1 = gu1 ? gu1[i] : 0.0;
    const auto& M = s.M;
    const double quad = M[0] * a0 * a0 + (M[1] + M[2]) * a0 * a1 + M[3] * a1 * a1;
    if (t.g) acc.g[i] += quad;
    if (t.gt) acc.gt[i] += 0.5 * quad;
    if (t.cross) {
        const double b0 = gv0[i], b1 = gv1 ? gv1[i] : 0.0;
        acc.cross[i] += M[0] * a0 * b0 + M[1] * a0 * b1 + M[2] * a1 * b0 + M[3] * a1 * b1;
    }
    if (t.hs) {
        if (t.p == 2.0) {
            acc.hs[i] += quad;
        } else {
            double h = 0.0;
            for (const InnerRay& r : s.rays) {
                const double g = a0 * r.direction[0] + a1 * r.direction[1];
                h += r.weight * r.scale * inner_ray_remainder(s.profile, s.eps, t.p, u[i], g);
            }
            acc.hs[i] += h;
        }
    }
}

}  // namespace

namespace serial {

void near_node(const Terms& t, double w, std::size_t n, const double* u, const double* du, const double* v,
               const double* dv, Accumulators& acc) {
    for (std::size_t i = 0; i < n; ++i) near_point(t, w, i, u, du, v, dv, acc);
}

void lattice(const Terms& t, const Grid& grid, std::span<const LatticeNode> nodes, const double* u, const double* v,
             const double* upow, const double* uder, Accumulators& acc) {
    for (std::size_t i = 0; i < grid.size(); ++i) lattice_point(t, grid, nodes, i, u, v, upow, uder, acc);
}

void inner(const Terms& t, const InnerSpec& spec, std::size_t n, const double* u, const double* gu0, const double* gu1,
           const double* gv0, const double* gv1, Accumulators& acc) {
    for (std::size_t i = 0; i < n; ++i) inner_point(t, spec, i, u, gu0, gu1, gv0, gv1, acc);
}

void running_max_abs(double* acc, const double* u, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] = std::max(acc[i], std::abs(u[i]));
}

}  // namespace serial

namespace parallel {

void near_node(const Terms& t, double w, std::size_t n, const double* u, const double* du, const double* v,
               const double* dv, Accumulators& acc) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) near_point(t, w, std::size_t(i), u, du, v, dv, acc);
}

void lattice(const Terms& t, const Grid& grid, std::span<const LatticeNode> nodes, const double* u, const double* v,
             const double* upow, const double* uder, Accumulators& acc) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(grid.size()); ++i) lattice_point(t, grid, nodes, std::size_t(i), u, v, upow, uder, acc);
}

void inner(const Terms& t, const InnerSpec& spec, std::size_t n, const double* u, const double* gu0, const double* gu1,
           const double* gv0, const double* gv1, Accumulators& acc) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < long(n); ++i) inner_point(t, spec, std::size_t(i), u, gu0, gu1, gv0, gv1, acc);
}

void running_max_abs(double* acc, const double* u, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) acc[i] = std::max(acc[i], std::abs(u[i]));
}

}  // namespace parallel

}  // namespace levy::kernels
