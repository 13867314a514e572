#include <doctest.h>

#include <cmath>

#include "levy/family.hpp"
#include "levy/multiplier.hpp"
#include "levy/rng.hpp"
#include "levy/workbench.hpp"

using namespace levy;

namespace {

const Workbench& bench1d() {
    static const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, 1.5), Grid(1, 256, 16.0));
    return wb;
}

// 2 A int_1^inf (1 - cos(xi r)) r^(-1-a) dr by Simpson on [1, R] plus the asymptotic tail
double outer_symbol(double A, double a, double xi) {
    const double R = 400.0;
    const int n = 400000;
    const double h = (R - 1.0) / n;
    auto g = [&](double r) { return (1.0 - std::cos(xi * r)) * std::pow(r, -1.0 - a); };
    double s = g(1.0) + g(R);
    for (int i = 1; i < n; ++i) s += g(1.0 + i * h) * (i % 2 ? 4.0 : 2.0);
    s *= h / 3.0;
    s += std::pow(R, -a) / a + std::sin(xi * R) * std::pow(R, -1.0 - a) / xi;
    return 2.0 * A * s;
}

}  // namespace

TEST_CASE("Marcinkiewicz closed form") {
    CHECK(marcinkiewicz_symbol(1.0, 1, {3.0, -1.0}) == doctest::Approx(0.75));
    CHECK(marcinkiewicz_symbol(2.0 / 3.0, 2, {0.0, 5.0}) == doctest::Approx(1.0));
    const MultiplierSymbol cf = marcinkiewicz_closed_form(Grid(2, 16, 4.0), 1.0, 1);
    CHECK(cf.sup() <= 1.0);
}

TEST_CASE("constant modulators give constant symbols") {
    const Workbench& wb = bench1d();
    for (double c : {1.0, -0.4}) {
        const MultiplierSymbol m = symbol_from_phi(wb.symbol, wb.jq, wb.tq, Modulator::constant(c));
        for (std::size_t k = 1; k < m.m.size(); ++k) CHECK(m.m[k] == doctest::Approx(c).epsilon(1e-3));
    }
    const MultiplierSymbol one = symbol_from_phi(wb.symbol, wb.jq, wb.tq, Modulator::constant(1.0));
    const GridFunction f = standard_family(1, 16.0)[2].sample(wb.grid());
    CHECK((apply_multiplier(one, f) - f).max_abs() < 1e-3 * f.max_abs());
}

TEST_CASE("separable modulator exp(-t): m = 2 psi / (2 psi + 1)") {
    const Workbench& wb = bench1d();
    const Modulator phi = Modulator::separable([](double t) { return std::exp(-t); }, [](const Vec2&) { return 1.0; }, 1.0, "exp(-t)");
    const MultiplierSymbol m = symbol_from_phi(wb.symbol, wb.jq, wb.tq, phi);
    for (std::size_t k : {1u, 5u, 20u, 100u}) {
        const double psi = std::pow(std::abs(wb.grid().dual_point(k)[0]), 1.5);
        CHECK(m.m[k] == doctest::Approx(2 * psi / (2 * psi + 1)).epsilon(2e-3));
    }
}

TEST_CASE("time-independent modulator 1{|y| > 1}: m = psi_outer / psi") {
    const Workbench& wb = bench1d();
    const Modulator phi = Modulator::time_independent([](const Vec2& y) { return norm(y) > 1.0 ? 1.0 : 0.0; }, 1.0, "outer");
    const MultiplierSymbol m = symbol_from_phi(wb.symbol, wb.jq, wb.tq, phi);
    const double A = wb.model().density_constant();
    for (std::size_t k : {3u, 10u, 40u}) {
        const double xi = std::abs(wb.grid().dual_point(k)[0]);
        CHECK(m.m[k] == doctest::Approx(outer_symbol(A, 1.5, xi) / std::pow(xi, 1.5)).epsilon(5e-3));
    }
    CHECK(m.sup() <= 1.0 + 1e-8);
}

TEST_CASE("pairing: time domain equals frequency domain, and the bound holds") {
    const Workbench& wb = bench1d();
    const Modulator phi = Modulator::separable([](double t) { return std::cos(t); }, [](const Vec2& y) { return std::exp(-std::abs(y[0])); }, 1.0, "cos t e^-|y|");
    phi.validate(1);
    const MultiplierSymbol m = symbol_from_phi(wb.symbol, wb.jq, wb.tq, phi);
    CHECK(m.sup() <= phi.sup_norm + 1e-8);
    const auto [f, h] = random_zero_mass_pair(1, 16.0, derive_seed(4, 0));
    const GridFunction F = f.sample(wb.grid()), H = h.sample(wb.grid());
    const double lt = pairing_time_domain(wb.symbol, wb.jq, wb.tq, phi, F, H);
    const double lf = pairing_fourier_domain(m, F, H);
    CHECK(lt == doctest::Approx(lf).epsilon(1e-2));
    CHECK(pairing_bound_check(wb.symbol, wb.jq, wb.tq, phi, F, H, 1.5).passed);
}

TEST_CASE("modulator validation rejects an understated sup norm") {
    const Modulator bad = Modulator::time_independent([](const Vec2& y) { return 2.0 + y[0] * 0.0; }, 1.0, "two");
    CHECK_THROWS_AS(bad.validate(1), std::invalid_argument);
}

TEST_CASE("Marcinkiewicz synthesis on the axis-stable model") {
    const Grid g(2, 32, 16.0);
    const Workbench wb = make_workbench(LevyModel::axis_stable(2, 1.0), g);
    const MultiplierSymbol m = symbol_from_phi(wb.symbol, wb.jq, wb.tq, Modulator::marcinkiewicz_selector(1, 1.0));
    const MultiplierSymbol cf = marcinkiewicz_closed_form(g, 1.0, 1);
    double worst = 0.0;
    for (std::size_t k = 1; k < m.m.size(); ++k) worst = std::max(worst, std::abs(m.m[k] - cf.m[k]));
    CHECK(worst < 1e-2);
    CHECK(m.sup() <= 1.0 + 1e-8);
}
