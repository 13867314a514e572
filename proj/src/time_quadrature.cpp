#include "levy/time_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levy/errors.hpp"

namespace levy {

TimeQuadrature make_time_quadrature(const SymbolGrid& symbol, const TimeQuadratureOptions& opts) {
    if (!(opts.t_min > 0.0)) throw std::invalid_argument("t_min must be positive");
    if (opts.nodes_per_decade < 1) throw std::invalid_argument("nodes_per_decade must be >= 1");
    if (!(opts.decay > 0.0 && opts.decay < 1.0)) throw std::invalid_argument("decay must lie in (0, 1)");
    const double psi_min = symbol.min_positive();
    if (!std::isfinite(psi_min)) throw ModelError("symbol vanishes on every nonzero frequency");
    const double t_max = opts.t_max > 0.0 ? opts.t_max : -std::log(opts.decay) / psi_min;
    if (!(t_max > opts.t_min)) throw std::invalid_argument("t_max must exceed t_min");

    TimeQuadrature q;
    q.t_min = opts.t_min;
    q.t_max = t_max;
    q.tail_rate = 2.0 * psi_min;
    q.t = log_spaced_times(opts.t_min, t_max, opts.nodes_per_decade);
    const std::size_t n = q.t.size() - 1;
    const double ds = std::log(t_max / opts.t_min) / double(n);
    q.v.assign(q.t.size(), 0.0);
    for (std::size_t j = 0; j <= n; ++j) q.v[j] = ds * q.t[j] * ((j == 0 || j == n) ? 0.5 : 1.0);
    q.v.front() += opts.t_min;
    q.v.back() += 1.0 / q.tail_rate;
    q.scheme = "trapezoid-log-t+head+exp-tail";
    return q;
}

TimeQuadrature TimeQuadrature::truncated(double T) const {
    TimeQuadrature q = *this;
    q.scheme = "truncated-linear-log-t";
    std::fill(q.v.begin(), q.v.end(), 0.0);
    if (!(T > 0.0)) return q;
    if (T <= t_min) {
        q.v[0] = T;
        return q;
    }
    q.v[0] += t_min;
    const std::size_t n = t.size() - 1;
    const double ds = std::log(t_max / t_min) / double(n);
    const double sT = std::log(std::min(T, t_max) / t_min);
    for (std::size_t j = 0; j < n; ++j) {
        const double sj = ds * double(j);
        if (sj + ds <= sT * (1.0 + 1e-15)) {
            q.v[j] += 0.5 * ds * t[j];
            q.v[j + 1] += 0.5 * ds * t[j + 1];
        } else if (sj < sT) {
            const double l = sT - sj;
            q.v[j] += t[j] * (l - l * l / (2.0 * ds));
            q.v[j + 1] += t[j + 1] * l * l / (2.0 * ds);
            break;
        } else {
            break;
        }
    }
    if (T > t_max) {
        q.v[n] += std::isinf(T) ? 1.0 / tail_rate : -std::expm1(-tail_rate * (T - t_max)) / tail_rate;
    }
    return q;
}

}  // namespace levy
