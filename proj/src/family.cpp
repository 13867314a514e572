#include "levy/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "levy/rng.hpp"

namespace levy {

GridFunction TestFunction::sample(const Grid& g) const {
    const int d = g.dim();
    return GridFunction::sample(g, [&](const Vec2& x) {
        double s = 0.0;
        for (const Bump& b : bumps) {
            const double dx = x[0] - b.center[0], dy = d == 2 ? x[1] - b.center[1] : 0.0;
            const double norm = std::pow(2.0 * std::numbers::pi * b.width * b.width, -0.5 * d);
            s += b.amplitude * norm * std::exp(-(dx * dx + dy * dy) / (2.0 * b.width * b.width));
        }
        return s;
    });
}

double TestFunction::mass() const {
    double m = 0.0;
    for (const Bump& b : bumps) m += b.amplitude;
    return m;
}

double TestFunction::margin(double L) const {
    double m = std::numeric_limits<double>::infinity();
    for (const Bump& b : bumps) m = std::min(m, (0.5 * L - norm(b.center)) / b.width);
    return m;
}

bool leakage_compliant(const TestFunction& f, double L) { return f.margin(L) >= kLeakageMargin; }

double leakage(const GridFunction& f) {
    const Grid& g = f.grid();
    const double R = 0.5 * g.half_width();
    double out = 0.0, all = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f[i]);
        all += a;
        if (norm(g.point(i)) > R) out += a;
    }
    return all > 0.0 ? out / all : 0.0;
}

void require_leakage_compliant(const GridFunction& f, const std::string& what) {
    const double l = leakage(f);
    if (l > 1e-8) {
        std::ostringstream msg;
        msg << what << ": mass fraction " << l << " outside |x| <= L/2 exceeds 1e-8";
        throw std::invalid_argument(msg.str());
    }
}

namespace {

Vec2 place(int d, double c) { return d == 1 ? Vec2{c, 0.0} : Vec2{c, 0.6 * c}; }

}  // namespace

std::vector<TestFunction> standard_family(int d, double L) {
    const double s = L / 16.0;
    auto bump = [&](double c, double w, double a) { return Bump{place(d, c * s), w * s, a}; };
    std::vector<TestFunction> fam{
        {"single", {bump(0.0, 1.0, 1.0)}},
        {"narrow", {bump(2.0, 0.5, 1.0)}},
        {"wide", {bump(-1.0, 1.0, 1.5)}},
        {"dipole", {bump(-1.5, 0.7, 1.0), bump(1.5, 0.7, -1.0)}},
        {"unbalanced", {bump(0.0, 0.6, 1.0), bump(1.5, 1.0, -0.5)}},
        {"triple", {bump(-2.5, 0.5, 1.0), bump(0.0, 0.5, -1.0), bump(2.5, 0.5, 1.0)}},
        {"same-sign-pair", {bump(-0.5, 0.4, 1.0), bump(1.0, 0.8, 1.0)}},
        {"negative", {bump(0.5, 0.8, -2.0)}},
    };
    for (const TestFunction& f : fam)
        if (!leakage_compliant(f, L)) throw std::logic_error("standard family member " + f.label + " leaks");
    return fam;
}

TestFunction unit_gaussian() { return {"unit-gaussian", {Bump{{0.0, 0.0}, 1.0, 1.0}}}; }

std::pair<TestFunction, TestFunction> random_zero_mass_pair(int d, double L, std::uint64_t seed) {
    Rng rng(seed);
    const double s = L / 16.0;
    auto one = [&](const std::string& label) {
        TestFunction f{label, {}};
        const double a = rng.uniform(0.5, 2.0);
        for (double sign : {1.0, -1.0}) {
            const double w = rng.uniform(0.4, 1.0) * s;
            const double reach = 0.5 * L - kLeakageMargin * w - 1e-9;
            Vec2 c{0.0, 0.0};
            if (d == 1) {
                c[0] = rng.uniform(-reach, reach);
            } else {
                const double r = reach * std::sqrt(rng.uniform()), th = rng.uniform(0.0, 2.0 * std::numbers::pi);
                c = {r * std::cos(th), r * std::sin(th)};
            }
            f.bumps.push_back({c, w, sign * a});
        }
        return f;
    };
    TestFunction f = one("random-f");
    TestFunction g = one("random-g");
    return {f, g};
}

std::pair<TestFunction, TestFunction> separated_pair(int d, double L) {
    const double s = L / 16.0;
    auto dipole = [&](double c, const std::string& label) {
        return TestFunction{label, {Bump{place(d, (c - 0.6) * s), 0.4 * s, 1.0}, Bump{place(d, (c + 0.6) * s), 0.4 * s, -1.0}}};
    };
    return {dipole(-4.0, "left-dipole"), dipole(4.0, "right-dipole")};
}

}  // namespace levy
