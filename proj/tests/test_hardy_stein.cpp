#include <doctest.h>

#include <cmath>

#include "levy/family.hpp"
#include "levy/hardy_stein.hpp"
#include "levy/workbench.hpp"

using namespace levy;

TEST_CASE("F and its regularisation") {
    const PExponent p(1.5);
    CHECK(p.q == doctest::Approx(3.0));
    CHECK(F(PExponent(2.0), 0.4, -1.1) == doctest::Approx(1.5 * 1.5));
    CHECK(F(p, 0.0, 2.0) == doctest::Approx(std::pow(2.0, 1.5)));
    // F_eps(a, a) = 0 and F_eps(0, b) = (b^2 + e^2)^(p/2) - e^p
    CHECK(F_eps(p, 0.1, 0.7, 0.7) == 0.0);
    CHECK(F_eps(p, 0.1, 0.0, 0.5) == doctest::Approx(std::pow(0.26, 0.75) - std::pow(0.1, 1.5)));
    CHECK_THROWS(PExponent(1.0));
}

TEST_CASE("lemma checks") {
    for (double pv : {1.1, 1.5, 1.9}) {
        const RegularizedBoundCheck r = regularized_bound_check(PExponent(pv), 20000, 3, 1e-12);
        CHECK(r.passed);
        CHECK(r.min_value >= 0.0);
        const TaylorBoundRatios a = taylor_bound_ratios(PExponent(pv), 20000, 5);
        CHECK(a.min_ratio > 0.0);
        CHECK(std::isfinite(a.max_ratio));
    }
    const TaylorBoundRatios two = taylor_bound_ratios(PExponent(2.0), 10000, 1);
    CHECK(two.min_ratio == doctest::Approx(1.0));
    CHECK(two.max_ratio == doctest::Approx(1.0));
    CHECK_THROWS(regularized_bound_check(PExponent(2.5), 10, 1));
}

TEST_CASE("Hardy-Stein identity for stable models") {
    const Grid g(1, 256, 16.0);
    const GridFunction f = unit_gaussian().sample(g);
    for (double alpha : {1.0, 1.5}) {
        const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, alpha), g);
        for (double p : {1.5, 2.0, 3.0}) {
            const HardySteinReport r = hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, f, PExponent(p));
            CHECK(r.rel_error < 2e-3);
            CHECK(r.partial_sums.size() == wb.tq.size());
            CHECK(r.lhs == doctest::Approx(r.lhs_raw - r.equilibrium));
        }
    }
}

TEST_CASE("Hardy-Stein at p = 2 equals the L2 energy of f minus its mean") {
    const Grid g(1, 128, 8.0);
    const Workbench wb = make_workbench(LevyModel::tempered_stable(1, 1.2, 0.5), g);
    const GridFunction f = GridFunction::sample(g, [](const Vec2& x) { return std::exp(-x[0] * x[0]) * (0.3 + x[0]); });
    const double mean = f.integral() / 16.0;
    double energy = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) energy += (f[i] - mean) * (f[i] - mean) * g.h();
    const HardySteinReport r = hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, f, PExponent(2.0));
    CHECK(r.lhs == doctest::Approx(energy).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(energy).epsilon(5e-3));
}

TEST_CASE("Hardy-Stein degenerate inputs") {
    const Grid g(1, 64, 8.0);
    const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, 1.5), g);
    const HardySteinReport zero = hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, GridFunction(g), PExponent(1.5));
    CHECK(zero.rhs == 0.0);
    CHECK(zero.lhs == 0.0);
    const HardySteinReport c = hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, GridFunction(g, std::vector<double>(64, 2.0)), PExponent(3.0));
    CHECK(c.lhs == doctest::Approx(0.0).scale(1e-12));
    CHECK(c.rhs == doctest::Approx(0.0).scale(1e-12));
}

TEST_CASE("Hardy-Stein error decreases under refinement") {
    std::vector<double> errs;
    for (int N : {256, 512, 1024}) {
        const Grid g(1, N, 16.0);
        const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, 1.5), g);
        errs.push_back(hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, unit_gaussian().sample(g), PExponent(1.5)).rel_error);
    }
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
    CHECK(std::log(errs[0] / errs[2]) / std::log(4.0) >= 0.8);
}
