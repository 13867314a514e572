#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "levy/grid.hpp"

namespace levy {

// amplitude * normalised Gaussian of the given width centred at center
// (unit mass for amplitude 1).
struct Bump {
    Vec2 center{0.0, 0.0};
    double width = 1.0;
    double amplitude = 1.0;

    bool operator==(const Bump&) const = default;
};

struct TestFunction {
    std::string label;
    std::vector<Bump> bumps;

    GridFunction sample(const Grid& g) const;
    double mass() const;
    // Smallest (L/2 - |c|) / w over the bumps.
    double margin(double L) const;

    bool operator==(const TestFunction&) const = default;
};

// Gaussian tails below 1e-8 of the mass outside |x| <= L/2.
constexpr double kLeakageMargin = 6.2;

bool leakage_compliant(const TestFunction& f, double L);
// Fraction of sum |f| lying outside |x| <= L/2.
double leakage(const GridFunction& f);
// Throws std::invalid_argument when the sampled function leaks more than 1e-8.
void require_leakage_compliant(const GridFunction& f, const std::string& what);

// Eight bump patterns (single, narrow, wide, dipole, unbalanced pair, triple,
// same-sign pair, negative) scaled to the box; every member is leakage-compliant.
std::vector<TestFunction> standard_family(int d, double L);

// Unit-mass Gaussian of width 1 at the origin.
TestFunction unit_gaussian();

// Zero-mass random pair: each function is a +/- bump pair with equal masses.
std::pair<TestFunction, TestFunction> random_zero_mass_pair(int d, double L, std::uint64_t seed);

// Zero-mass dipoles far apart on opposite sides of the box: <f, g> ~ 0.
std::pair<TestFunction, TestFunction> separated_pair(int d, double L);

}  // namespace levy
