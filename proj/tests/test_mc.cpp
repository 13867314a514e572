#include <doctest.h>

#include <cmath>
#include <numbers>

#include <omp.h>

#include "levy/family.hpp"
#include "levy/mc.hpp"
#include "levy/workbench.hpp"

using namespace levy;

TEST_CASE("jump rate is the tail mass") {
    const LevyModel m = LevyModel::isotropic_stable(1, 1.5);
    CHECK(jump_rate(m, 0.1) == doctest::Approx(2.0 * m.density_constant() * std::pow(0.1, -1.5) / 1.5));
    const LevyModel cp = LevyModel::compound_poisson(1, {{{1.0, 0.0}, 0.3}, {{-1.0, 0.0}, 0.3}});
    CHECK(jump_rate(cp, 0.5) == doctest::Approx(0.6));
    CHECK(jump_rate(cp, 2.0) == 0.0);
}

TEST_CASE("paths: piecewise constant, jumps above the cutoff") {
    const LevyModel m = LevyModel::isotropic_stable(1, 1.0);
    PathConfig cfg;
    cfg.eps = 0.1;
    cfg.n = 50;
    cfg.z = {0.5, 0.0};
    const std::vector<PathSample> paths = simulate_paths(m, cfg);
    CHECK(paths.size() == 50);
    for (const PathSample& p : paths) {
        CHECK(p.start[0] == 0.5);
        Vec2 x = p.start;
        for (std::size_t k = 0; k < p.jumps.size(); ++k) {
            CHECK(norm(p.jumps[k]) > cfg.eps);
            CHECK(p.times[k] <= cfg.T);
            CHECK(p.position(p.times[k])[0] == doctest::Approx(x[0] + p.jumps[k][0]));
            x[0] += p.jumps[k][0];
        }
        CHECK(p.terminal()[0] == doctest::Approx(x[0]));
    }
}

TEST_CASE("same seed, any thread count: identical samples") {
    const LevyModel m = LevyModel::isotropic_stable(2, 1.5);
    PathConfig cfg;
    cfg.n = 300;
    cfg.seed = 99;
    const auto a = simulate_positions(m, cfg, 1.0);
    const int threads = omp_get_max_threads();
    omp_set_num_threads(3);
    const auto b = simulate_positions(m, cfg, 1.0);
    omp_set_num_threads(threads);
    CHECK(a == b);
    cfg.seed = 100;
    CHECK(simulate_positions(m, cfg, 1.0) != a);
}

TEST_CASE("sample moments") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const Moments mo = sample_moments(x);
    CHECK(mo.mean == doctest::Approx(2.5));
    CHECK(mo.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("empirical Cauchy density") {
    const Grid g(1, 512, 16.0);
    const LevyModel m = LevyModel::isotropic_stable(1, 1.0);
    PathConfig cfg;
    cfg.eps = 1e-2;
    cfg.n = 20000;
    cfg.seed = 5;
    const auto pos = simulate_positions(m, cfg, 1.0);
    const DensityCheck d = empirical_density_check(pos, 1.0, build_symbol_grid(m, g));
    CHECK(d.passed());
    CHECK(d.exact_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("martingale and integrated G_* checks") {
    const Grid g(1, 256, 16.0);
    const LevyModel m = LevyModel::isotropic_stable(1, 1.5);
    GridQuadratureOptions jo;
    jo.eps = 0.05;
    const Workbench wb = make_workbench(m, g, jo);
    PathConfig cfg;
    cfg.eps = 0.05;
    cfg.n = 4000;
    cfg.seed = 11;
    const GridFunction f = unit_gaussian().sample(g);
    const MartingaleCheck mc = martingale_check(m, wb.symbol, wb.jq, f, cfg, 0.1);
    CHECK(mc.mean_zero());
    CHECK(mc.isometry());

    const MartingaleCheck z = martingale_check(m, wb.symbol, wb.jq, GridFunction(g), cfg);
    CHECK(z.m2.mean == 0.0);
    CHECK(z.predictable.mean == 0.0);

    PathConfig gc = cfg;
    gc.n = 1000;
    const GstarIntegratedCheck gs = gstar_integrated_check(m, wb.symbol, wb.jq, wb.tq, f, gc, 16);
    CHECK(gs.passed());
    CHECK(gs.lhs > 0.0);

    const Workbench wb2 = make_workbench(LevyModel::isotropic_stable(2, 1.5), Grid(2, 32, 8.0), jo);
    CHECK_THROWS(martingale_check(wb2.model(), wb2.symbol, wb2.jq, unit_gaussian().sample(wb2.grid()), cfg));
}
