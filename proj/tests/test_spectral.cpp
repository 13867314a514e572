#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levy/spectral.hpp"
#include "levy/time_quadrature.hpp"
#include "levy/torus_quadrature.hpp"

using namespace levy;
using std::numbers::pi;

namespace {

// Periodised 1-D Cauchy density on [-L, L): the image sum in closed form.
double cauchy_torus_1d(double t, double x, double L) {
    const double a = pi / L;
    return std::sinh(a * t) / (2.0 * L * (std::cosh(a * t) - std::cos(a * x)));
}

double cauchy_images_2d(double t, const Vec2& x, double L, int K) {
    double s = 0.0;
    for (int i = -K; i <= K; ++i)
        for (int j = -K; j <= K; ++j) {
            const double a = x[0] + 2 * L * i, b = x[1] + 2 * L * j;
            s += t / (2.0 * pi * std::pow(t * t + a * a + b * b, 1.5));
        }
    // remaining images as a continuum outside the square of half-side S:
    // int_{outside} |x|^-3 dA = 4 sqrt(2) / S, one image per (2L)^2
    const double S = (2 * K + 1) * L;
    return s + t / (2.0 * pi) * 4.0 * std::sqrt(2.0) / S / (4.0 * L * L);
}

}  // namespace

TEST_CASE("Cauchy transition density on the torus") {
    const Grid g(1, 512, 16.0);
    const SymbolGrid s = build_symbol_grid(LevyModel::isotropic_stable(1, 1.0), g);
    const GridFunction p = transition_density(s, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = g.point(i)[0];
        worst = std::max(worst, std::abs(p[i] / cauchy_torus_1d(1.0, x, 16.0) - 1.0));
    }
    CHECK(worst < 1e-10);
    CHECK(p.integral() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-dimensional Cauchy density against a brute-force image sum") {
    const Grid g(2, 256, 8.0);
    const SymbolGrid s = build_symbol_grid(LevyModel::isotropic_stable(2, 1.0), g);
    const GridFunction p = transition_density(s, 1.0);
    for (std::size_t idx : {g.index(128, 128), g.index(144, 120), g.index(176, 160)}) {
        const Vec2 x = g.point(idx);
        CHECK(p[idx] == doctest::Approx(cauchy_images_2d(1.0, x, 8.0, 60)).epsilon(1e-4));
        CHECK(p[idx] == doctest::Approx(cauchy_periodized(2, 1.0, x, 8.0)).epsilon(1e-4));
    }
}

TEST_CASE("semigroup property, contraction and equilibrium") {
    const Grid g(1, 128, 8.0);
    const SymbolGrid s = build_symbol_grid(LevyModel::isotropic_stable(1, 1.5), g);
    const GridFunction f = GridFunction::sample(g, [](const Vec2& x) { return std::exp(-x[0] * x[0]) * (1 + x[0]); });
    const GridFunction a = semigroup_apply(s, 0.3, semigroup_apply(s, 0.5, f));
    const GridFunction b = semigroup_apply(s, 0.8, f);
    CHECK((a - b).max_abs() < 1e-14);
    for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK(b.norm_p(p) <= f.norm_p(p) * (1 + 1e-12));
    const GridFunction e = equilibrium_projection(s, f);
    const double mean = f.integral() / 16.0;
    CHECK(e.max_abs() == doctest::Approx(std::abs(mean)));
    CHECK(semigroup_apply(s, 1e4, f)[3] == doctest::Approx(mean).epsilon(1e-9));
}

TEST_CASE("grid jump quadrature generator against the spectral generator") {
    for (int d : {1, 2}) {
        const Grid g(d, d == 1 ? 256 : 128, 8.0);
        const LevyModel m = LevyModel::isotropic_stable(d, 1.5);
        const SymbolGrid s = build_symbol_grid(m, g);
        const GridJumpQuadrature q = build_grid_quadrature(m, g);
        const GridFunction f = GridFunction::sample(g, [](const Vec2& x) { return std::exp(-0.5 * dot(x, x)); });
        SpectrumFunction F = forward_transform(f);
        for (std::size_t k = 0; k < F.values.size(); ++k) F.values[k] *= -s.psi[k];
        const GridFunction ref = inverse_transform(F);
        const GridFunction lf = generator_apply(q, f);
        CHECK((lf - ref).max_abs() / ref.max_abs() < 2e-3);

        const std::vector<double> implied = implied_symbol_grid(q);
        double worst = 0.0;
        for (std::size_t k = 1; k < implied.size(); ++k) {
            const Vec2 xi = g.dual_point(k);
            if (norm(xi) > 8.0) continue;
            worst = std::max(worst, std::abs(implied[k] / s.psi[k] - 1.0));
        }
        CHECK(worst < 2e-3);
    }
}

TEST_CASE("time quadrature integrates 2 psi exp(-2 t psi) to one") {
    const Grid g(1, 512, 16.0);
    const SymbolGrid s = build_symbol_grid(LevyModel::isotropic_stable(1, 1.0), g);
    const TimeQuadrature tq = make_time_quadrature(s);
    for (std::size_t k : {1u, 7u, 60u, 255u}) {
        const double psi = s.psi[k];
        double sum = 0.0;
        for (std::size_t j = 0; j < tq.size(); ++j) sum += tq.v[j] * 2.0 * psi * std::exp(-2.0 * tq.t[j] * psi);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-2));
    }
    const TimeQuadrature half = tq.truncated(1.0);
    double sum = 0.0;
    for (std::size_t j = 0; j < half.size(); ++j) sum += half.v[j];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("maximal function dominates |f| and log-spaced times") {
    const std::vector<double> ts = log_spaced_times(1e-2, 1e2, 4);
    CHECK(ts.size() == 17);
    CHECK(ts.front() == doctest::Approx(1e-2));
    CHECK(ts.back() == doctest::Approx(1e2));
    const Grid g(1, 128, 8.0);
    const SymbolGrid s = build_symbol_grid(LevyModel::isotropic_stable(1, 1.0), g);
    const GridFunction f = GridFunction::sample(g, [](const Vec2& x) { return std::exp(-x[0] * x[0]) - 0.5 * std::exp(-(x[0] - 2) * (x[0] - 2)); });
    const GridFunction m = maximal_function(s, f, ts);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(m[i] >= std::abs(semigroup_apply(s, 1e-2, f)[i]) - 1e-15);
}

TEST_CASE("subordination check for alpha = 1") {
    const VerificationReport r = subordination_check_alpha1(LevyModel::isotropic_stable(1, 1.0), Grid(1, 256, 16.0), 1.0);
    CHECK(r.passed);
}
