#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levy/fft.hpp"
#include "levy/grid.hpp"
#include "levy/spectral.hpp"

using namespace levy;
using std::numbers::pi;

namespace {

double gauss(const Vec2& x, int d, double c0 = 0.0) {
    const double r2 = (x[0] - c0) * (x[0] - c0) + (d == 2 ? x[1] * x[1] : 0.0);
    return std::exp(-0.5 * r2) / std::pow(2.0 * pi, 0.5 * d);
}

}  // namespace

TEST_CASE("grid geometry") {
    const Grid g(1, 16, 4.0);
    CHECK(g.h() == doctest::Approx(0.5));
    CHECK(g.point(0)[0] == doctest::Approx(-4.0));
    CHECK(g.point(8)[0] == doctest::Approx(0.0));
    CHECK(g.signed_index(9) == -7);
    CHECK(g.frequency(1) == doctest::Approx(pi / 4.0));
    CHECK(g.shifted(15, 1, 0) == 0);

    const Grid g2(2, 8, 1.0);
    CHECK(g2.size() == 64);
    CHECK(g2.cell_volume() == doctest::Approx(0.0625));
    const Vec2 p = g2.point(g2.index(2, 5));
    CHECK(p[0] == doctest::Approx(-0.5));
    CHECK(p[1] == doctest::Approx(0.25));
    CHECK(g2.shifted(g2.index(7, 0), 1, -1) == g2.index(0, 7));
}

TEST_CASE("fft matches a naive DFT") {
    for (int d : {1, 2}) {
        const Grid g(d, 8, 1.0);
        const Fft fft(g);
        std::vector<cplx> in(g.size()), out(g.size()), back(g.size());
        for (std::size_t i = 0; i < in.size(); ++i) in[i] = {std::sin(1.0 + i), std::cos(0.3 * i * i)};
        fft.plus(in.data(), out.data());
        fft.minus(in.data(), back.data());
        const int N = g.n();
        for (std::size_t k = 0; k < in.size(); ++k) {
            cplx ref_p = 0.0, ref_m = 0.0;
            for (std::size_t j = 0; j < in.size(); ++j) {
                double phase;
                if (d == 1)
                    phase = 2.0 * pi * double(j * k) / N;
                else
                    phase = 2.0 * pi * double((j / N) * (k / N) + (j % N) * (k % N)) / N;
                ref_p += in[j] * std::polar(1.0, phase);
                ref_m += in[j] * std::polar(1.0, -phase);
            }
            CHECK(std::abs(out[k] - ref_p) < 1e-12);
            CHECK(std::abs(back[k] - ref_m) < 1e-12);
        }
    }
}

TEST_CASE("forward transform of a Gaussian is exp(-xi^2/2)") {
    for (int d : {1, 2}) {
        const Grid g(d, 64, 12.0);
        const GridFunction f = GridFunction::sample(g, [d](const Vec2& x) { return gauss(x, d); });
        const SpectrumFunction F = forward_transform(f);
        double worst = 0.0;
        for (std::size_t k = 0; k < F.values.size(); ++k) {
            const Vec2 xi = g.dual_point(k);
            worst = std::max(worst, std::abs(F.values[k] - cplx(std::exp(-0.5 * dot(xi, xi)), 0.0)));
        }
        CHECK(worst < 1e-12);
        const GridFunction back = inverse_transform(F);
        double err = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
        CHECK(err < 1e-14);
    }
}

TEST_CASE("band-limited shift and derivative of a Gaussian") {
    const Grid g(1, 128, 12.0);
    const GridFunction f = GridFunction::sample(g, [](const Vec2& x) { return gauss(x, 1); });
    const GridFunction s = spectral_shift(f, {0.3, 0.0});
    const GridFunction df = spectral_derivative(f, 0);
    double es = 0.0, ed = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec2 x = g.point(i);
        es = std::max(es, std::abs(s[i] - gauss(x, 1, -0.3)));
        ed = std::max(ed, std::abs(df[i] + x[0] * gauss(x, 1)));
    }
    CHECK(es < 1e-13);
    CHECK(ed < 1e-13);
}

TEST_CASE("grid function norms") {
    const Grid g(2, 8, 2.0);
    GridFunction c(g, std::vector<double>(g.size(), 3.0));
    const double area = 16.0;
    CHECK(c.integral() == doctest::Approx(3.0 * area));
    CHECK(c.norm_p(2.0) == doctest::Approx(3.0 * std::sqrt(area)));
    CHECK(c.norm_p(1.5) == doctest::Approx(3.0 * std::pow(area, 1.0 / 1.5)));
    CHECK(c.norm_p(std::numeric_limits<double>::infinity()) == 3.0);
    GridFunction d = c - 2.0 * c;
    CHECK(d.max_abs() == 3.0);
    CHECK(c.inner(d) == doctest::Approx(-9.0 * area));
}
