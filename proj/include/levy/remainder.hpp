#pragma once

#include <cmath>

namespace levy {

// |b|^p - |a|^p - p sign(a)|a|^{p-1} (b - a), with the a = 0 branch |b|^p.
// Near the diagonal it is evaluated as |a|^p R(d), d = (b - a)/a,
// R(d) = (1 + d)^p - 1 - p d, to avoid cancellation.
inline double taylor_remainder(double p, double a, double b) {
    if (a == 0.0) return std::pow(std::abs(b), p);
    if (p == 2.0) return (b - a) * (b - a);
    const double d = (b - a) / a;
    const double aa = std::abs(a);
    if (std::abs(d) > 0.5) {
        const double v = std::pow(std::abs(b), p) - std::pow(aa, p) - p * std::pow(aa, p - 1.0) * (a > 0 ? 1.0 : -1.0) * (b - a);
        return v > 0.0 ? v : 0.0;
    }
    double r;
    if (std::abs(d) < 1e-3) {
        double c = p * (p - 1.0) / 2.0, dn = d * d;
        r = 0.0;
        for (int n = 2; n <= 7; ++n) {
            r += c * dn;
            c *= (p - n) / (n + 1.0);
            dn *= d;
        }
    } else {
        r = std::expm1(p * std::log1p(d)) - p * d;
    }
    const double v = std::pow(aa, p) * r;
    return v > 0.0 ? v : 0.0;
}

// (b^2 + e^2)^{p/2} - (a^2 + e^2)^{p/2} - p a (a^2 + e^2)^{(p-2)/2} (b - a)
inline double regularized_remainder(double p, double eps, double a, double b) {
    if (eps == 0.0) return taylor_remainder(p, a, b);
    const double e2 = eps * eps;
    const double A = a * a + e2;
    // Write b^2 + e^2 = A (1 + d) with d = (b - a)(b + a) / A.
    const double d = (b - a) * (b + a) / A;
    const double Ap = std::pow(A, p / 2.0);
    const double lin = p * a * (b - a) / A;
    double v;
    if (std::abs(d) < 0.5) {
        // A^{p/2} [ (1+d)^{p/2} - 1 - lin ]
        v = Ap * (std::expm1(0.5 * p * std::log1p(d)) - lin);
    } else {
        v = std::pow(b * b + e2, p / 2.0) - Ap - Ap * lin;
    }
    return v > 0.0 ? v : 0.0;
}

}  // namespace levy
