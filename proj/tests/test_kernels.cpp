#include <doctest.h>

#include <cmath>
#include <vector>

#include "levy/increments.hpp"
#include "levy/kernels.hpp"
#include "levy/reduce.hpp"
#include "levy/remainder.hpp"
#include "levy/spectral.hpp"
#include "levy/torus_quadrature.hpp"

using namespace levy;

namespace {

long double remainder_ld(long double p, long double a, long double b) {
    const long double sa = a > 0 ? 1.0L : (a < 0 ? -1.0L : 0.0L);
    return std::pow(std::fabs(b), p) - std::pow(std::fabs(a), p) - p * sa * std::pow(std::fabs(a), p - 1) * (b - a);
}

}  // namespace

TEST_CASE("Taylor remainder against an extended-precision direct formula") {
    for (double p : {1.1, 1.5, 2.0, 3.0})
        for (double a : {-2.0, -0.3, 0.7, 1.0})
            for (double b : {-1.0, 0.0, 0.69, 0.7001, 1.4, 5.0}) {
                const double r = taylor_remainder(p, a, b);
                const double ref = double(remainder_ld(p, a, b));
                CHECK(r >= 0.0);
                CHECK(r == doctest::Approx(ref).epsilon(1e-9).scale(1e-14));
            }
    CHECK(taylor_remainder(2.5, 0.0, -2.0) == doctest::Approx(std::pow(2.0, 2.5)));
    // near the diagonal: (p(p-1)/2) |a|^(p-2) (b-a)^2
    const double a = 1.3, db = 1e-6;
    CHECK(taylor_remainder(1.5, a, a + db) == doctest::Approx(0.375 * std::pow(a, -0.5) * db * db).epsilon(1e-5));
}

TEST_CASE("regularised remainder tends to the Taylor remainder") {
    for (double p : {1.2, 1.7})
        CHECK(regularized_remainder(p, 1e-9, 0.8, -0.4) == doctest::Approx(taylor_remainder(p, 0.8, -0.4)).epsilon(1e-7));
    CHECK(regularized_remainder(1.5, 0.0, 0.3, 0.5) == taylor_remainder(1.5, 0.3, 0.5));
}

TEST_CASE("pairwise summation") {
    std::vector<double> x(1000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = double(i + 1);
    CHECK(pairwise_sum(x) == 500500.0);
    CHECK(pairwise_sum(std::span<const double>()) == 0.0);
}

TEST_CASE("near-node accumulation") {
    kernels::Terms t;
    t.hs = t.g = t.gt = t.cross = true;
    t.p = 1.5;
    const double u[3] = {1.0, -2.0, 0.5}, du[3] = {0.5, 1.0, -1.0}, v[3] = {0.0, 1.0, 2.0}, dv[3] = {2.0, -1.0, 0.0};
    kernels::Accumulators acc;
    acc.reset(3, t);
    kernels::serial::near_node(t, 0.25, 3, u, du, v, dv, acc);
    for (int i = 0; i < 3; ++i) {
        CHECK(acc.g[i] == doctest::Approx(0.25 * du[i] * du[i]));
        CHECK(acc.cross[i] == doctest::Approx(0.25 * du[i] * dv[i]));
        CHECK(acc.hs[i] == doctest::Approx(0.25 * taylor_remainder(1.5, u[i], u[i] + du[i])));
        CHECK(acc.gt[i] == doctest::Approx(std::abs(u[i]) > std::abs(u[i] + du[i]) ? 0.25 * du[i] * du[i] : 0.0));
    }
}

TEST_CASE("inner ray remainder against direct quadrature") {
    const kernels::RayProfile prof{0.4, 1.5, 0.0};
    const double eps = 0.05, p = 1.5, u = 0.7, g = -3.0;
    // substitute r = eps s^4 to tame the r^(-1-alpha) r^2 endpoint
    double ref = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) / n;
        const double r = eps * std::pow(s, 4), dr = eps * 4 * std::pow(s, 3) / n;
        ref += taylor_remainder(p, u, u + g * r) * prof.density(r) * dr;
    }
    CHECK(kernels::inner_ray_remainder(prof, eps, p, u, g) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("increment engine lattice sums against brute force") {
    for (int N : {32, 64}) {
        const Grid g(2, N, 8.0);
        const LevyModel m = LevyModel::isotropic_stable(2, 1.0);
        const SymbolGrid s = build_symbol_grid(m, g);
        GridJumpQuadrature q = build_grid_quadrature(m, g);
        q.near.clear();
        q.inner_rays.clear();
        q.taylor = false;
        q.inner_matrix = {0.0, 0.0, 0.0, 0.0};
        // N = 64 exercises the convolution path
        CHECK((q.far.size() > IncrementEngine::kDirectLatticeMax) == (N == 64));

        const GridFunction f = GridFunction::sample(g, [](const Vec2& x) {
            return std::exp(-0.5 * dot(x, x)) - 0.7 * std::exp(-((x[0] - 1.5) * (x[0] - 1.5) + x[1] * x[1]));
        });
        const GridFunction h = GridFunction::sample(g, [](const Vec2& x) { return std::exp(-0.3 * dot(x, x)) * x[1]; });
        kernels::Terms terms;
        terms.hs = terms.g = terms.gt = terms.cross = true;
        terms.p = 1.5;
        const double t = 0.3;
        const GridFunction u = semigroup_apply(s, t, f), v = semigroup_apply(s, t, h);

        IncrementEngine eng(s, q);
        int calls = 0;
        eng.evaluate({t}, terms, f, &h, [&](std::size_t, double, const kernels::Accumulators& acc, const std::vector<double>&) {
            ++calls;
            double ehs = 0, eg = 0, egt = 0, ec = 0, scale = 0;
            for (std::size_t i = 0; i < g.size(); i += 37) {
                double hs = 0, gg = 0, gt = 0, cr = 0;
                for (const LatticeNode& nd : q.far) {
                    const std::size_t j = g.shifted(i, nd.o0, nd.o1);
                    const double du = u[j] - u[i], dv = v[j] - v[i];
                    hs += nd.w * taylor_remainder(1.5, u[i], u[j]);
                    gg += nd.w * du * du;
                    if (std::abs(u[i]) > std::abs(u[j])) gt += nd.w * du * du;
                    cr += nd.w * du * dv;
                }
                scale = std::max(scale, gg);
                ehs = std::max(ehs, std::abs(acc.hs[i] - hs));
                eg = std::max(eg, std::abs(acc.g[i] - gg));
                egt = std::max(egt, std::abs(acc.gt[i] - gt));
                ec = std::max(ec, std::abs(acc.cross[i] - cr));
            }
            CHECK(ehs < 1e-10 * scale);
            CHECK(eg < 1e-10 * scale);
            CHECK(egt < 1e-10 * scale);
            CHECK(ec < 1e-10 * scale);
        });
        CHECK(calls == 1);
    }
}
