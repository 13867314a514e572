#include <doctest.h>

#include <cmath>

#include "levy/divergence.hpp"
#include "levy/family.hpp"
#include "levy/rng.hpp"
#include "levy/square_fn.hpp"
#include "levy/workbench.hpp"

using namespace levy;

namespace {

const Workbench& bench1d() {
    static const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, 1.5), Grid(1, 256, 16.0));
    return wb;
}

}  // namespace

TEST_CASE("G isometry and G~ half-isometry on the standard family") {
    const Workbench& wb = bench1d();
    for (const TestFunction& tf : standard_family(1, 16.0)) {
        const VerificationReport r = isometry_check(wb.symbol, wb.jq, wb.tq, tf.sample(wb.grid()));
        CHECK_MESSAGE(r.passed, tf.label);
    }
}

TEST_CASE("pointwise structure of the square functions") {
    const Workbench& wb = bench1d();
    const GridFunction f = standard_family(1, 16.0)[3].sample(wb.grid());
    const SquarePair sq = square_G_pair(wb.symbol, wb.jq, wb.tq, f);
    const SquareFunctionResult g = square_G(wb.symbol, wb.jq, wb.tq, f);
    const SquareFunctionResult gt = square_Gtilde(wb.symbol, wb.jq, wb.tq, f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(sq.Gtilde.values[i] <= sq.G.values[i] + 1e-15);
        CHECK(sq.G.values[i] == doctest::Approx(g.values[i]).epsilon(1e-12));
        CHECK(sq.Gtilde.values[i] == doctest::Approx(gt.values[i]).epsilon(1e-12));
    }
    // integrating the heat-kernel average over x leaves ||G f||^2
    const SquareFunctionResult gs = square_Gstar(wb.symbol, wb.jq, wb.tq, f);
    CHECK(gs.values.norm_p(2.0) == doctest::Approx(g.values.norm_p(2.0)).epsilon(1e-3));
    // truncated G_* grows with T
    const double a = square_Gstar(wb.symbol, wb.jq, wb.tq, f, 0.5).values.norm_p(2.0);
    const double b = square_Gstar(wb.symbol, wb.jq, wb.tq, f, 2.0).values.norm_p(2.0);
    CHECK(a < b);
    CHECK(b <= gs.values.norm_p(2.0) * (1 + 1e-12));
}

TEST_CASE("polarization and linearity") {
    const Workbench& wb = bench1d();
    const auto fam = standard_family(1, 16.0);
    const GridFunction f = fam[0].sample(wb.grid()), h = fam[5].sample(wb.grid());
    CHECK(polarization_check(wb.symbol, wb.jq, wb.tq, f, h).passed);
    const SquareFunctionResult g1 = square_G(wb.symbol, wb.jq, wb.tq, f);
    const SquareFunctionResult g3 = square_G(wb.symbol, wb.jq, wb.tq, -3.0 * f);
    for (std::size_t i = 0; i < f.size(); i += 17) CHECK(g3.values[i] == doctest::Approx(3.0 * g1.values[i]).epsilon(1e-12));
}

TEST_CASE("norm equivalence ratios") {
    const Workbench& wb = bench1d();
    const auto fam = standard_family(1, 16.0);
    std::vector<GridFunction> s;
    for (const auto& tf : fam) s.push_back(tf.sample(wb.grid()));
    const NormEquivalenceReport two = norm_equivalence_report(wb.symbol, wb.jq, wb.tq, s, 2.0);
    for (double r : two.ratios) CHECK(r == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-2));
    NormEquivalenceReport r15 = norm_equivalence_report(wb.symbol, wb.jq, wb.tq, s, 1.5);
    CHECK(r15.min_ratio > 0.0);
    CHECK(r15.min_ratio <= r15.max_ratio);
    const Workbench fine = make_workbench(LevyModel::isotropic_stable(1, 1.5), Grid(1, 512, 16.0));
    std::vector<GridFunction> sf;
    for (const auto& tf : fam) sf.push_back(tf.sample(fine.grid()));
    attach_refinement(r15, norm_equivalence_report(fine.symbol, fine.jq, fine.tq, sf, 1.5), 0.05);
    CHECK(r15.refined);
    CHECK(r15.drift <= 0.05);
    CHECK(r15.passed());
}

TEST_CASE("duality bound on random pairs") {
    const Workbench& wb = bench1d();
    for (int i = 0; i < 5; ++i) {
        const auto [f, h] = random_zero_mass_pair(1, 16.0, derive_seed(9, i));
        CHECK(duality_bound_check(wb.symbol, wb.jq, wb.tq, f.sample(wb.grid()), h.sample(wb.grid()), 1.5).passed);
    }
    const auto [f, h] = separated_pair(1, 16.0);
    const VerificationReport r = duality_bound_check(wb.symbol, wb.jq, wb.tq, f.sample(wb.grid()), h.sample(wb.grid()), 1.5);
    CHECK(r.passed);
    CHECK(std::abs(r.lhs) < 1e-6);
}

TEST_CASE("divergence probe: singular profile diverges, smooth profile saturates") {
    const std::vector<double> s{1e-1, 1e-2, 1e-3, 1e-4};
    const Grid g(2, 256, 16.0);
    const DivergenceProbe sing = divergence_probe(g, s, ProbeProfile::Singular, ProbeRoute::Radial);
    const DivergenceProbe smooth = divergence_probe(g, s, ProbeProfile::Smooth, ProbeRoute::Radial);
    CHECK(divergence_verdict(sing).passed);
    CHECK(divergence_verdict(smooth).passed);
    for (const auto& inc : sing.increments()) {
        for (double d : inc) CHECK(d > 0.0);
        CHECK(inc.back() >= 0.5 * inc[inc.size() - 2]);
    }
}
