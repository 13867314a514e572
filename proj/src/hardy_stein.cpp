#include "levy/hardy_stein.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "levy/errors.hpp"
#include "levy/increments.hpp"
#include "levy/reduce.hpp"
#include "levy/remainder.hpp"
#include "levy/rng.hpp"

namespace levy {

PExponent::PExponent(double p_) : p(p_), q(p_ / (p_ - 1.0)) {
    if (!(p_ > 1.0) || !std::isfinite(p_)) throw std::invalid_argument("exponent p must lie in (1, inf)");
}

double F(const PExponent& p, double a, double b) { return taylor_remainder(p.p, a, b); }

double F_eps(const PExponent& p, double eps, double a, double b) { return regularized_remainder(p.p, eps, a, b); }

namespace {

double log_uniform_signed(Rng& rng) {
    const double mag = std::pow(10.0, rng.uniform(-6.0, 1.0));
    return rng.uniform() < 0.5 ? -mag : mag;
}

}  // namespace

TaylorBoundRatios taylor_bound_ratios(const PExponent& p, std::size_t sample_count, std::uint64_t seed) {
    if (sample_count < 10000) throw std::invalid_argument("taylor_bound_ratios needs at least 1e4 samples");
    Rng rng(seed);
    TaylorBoundRatios r{std::numeric_limits<double>::infinity(), 0.0, 0, 0};
    for (std::size_t i = 0; i < sample_count; ++i) {
        const double a = log_uniform_signed(rng), b = log_uniform_signed(rng);
        if (a == b) {
            ++r.skipped;
            continue;
        }
        const double weight = (b - a) * (b - a) * std::pow(std::max(std::abs(a), std::abs(b)), p.p - 2.0);
        const double ratio = F(p, a, b) / weight;
        r.min_ratio = std::min(r.min_ratio, ratio);
        r.max_ratio = std::max(r.max_ratio, ratio);
        ++r.samples;
    }
    return r;
}

RegularizedBoundCheck regularized_bound_check(const PExponent& p, std::size_t sample_count, std::uint64_t seed,
                                              double slack) {
    if (!(p.p < 2.0)) throw std::invalid_argument("the regularized bound is stated for 1 < p < 2");
    Rng rng(seed);
    RegularizedBoundCheck c{0, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), true};
    for (std::size_t i = 0; i < sample_count; ++i) {
        const double a = log_uniform_signed(rng), b = log_uniform_signed(rng);
        const double eps = i % 10 == 0 ? 0.0 : std::pow(10.0, rng.uniform(-6.0, 1.0));
        const double fe = F_eps(p, eps, a, b);
        const double bound = F(p, a, b) / (p.p - 1.0);
        c.max_excess = std::max(c.max_excess, fe - bound);
        c.min_value = std::min(c.min_value, fe);
        if (fe > bound + slack || fe < 0.0) c.passed = false;
        ++c.samples;
    }
    return c;
}

json grid_json(const Grid& g) { return {{"d", g.dim()}, {"N", g.n()}, {"L", g.half_width()}, {"h", g.h()}}; }

json quadrature_json(const GridJumpQuadrature& jq, const TimeQuadrature& tq) {
    return {{"jump",
             {{"eps", jq.eps},
              {"r_near", jq.r_near},
              {"near_nodes", jq.near.size()},
              {"lattice_nodes", jq.far.size()},
              {"taylor_completion", jq.taylor}}},
            {"time",
             {{"t_min", tq.t_min},
              {"t_max", tq.t_max},
              {"nodes", tq.size()},
              {"tail_rate", tq.tail_rate},
              {"scheme", tq.scheme}}}};
}

json HardySteinReport::to_json() const {
    json j;
    j["identity"] = "hardy-stein";
    j["p"] = p;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["rel_error"] = rel_error;
    j["lhs_raw"] = lhs_raw;
    j["equilibrium"] = equilibrium;
    j["grid"] = grid;
    j["quadratures"] = quadratures;
    j["per_time"] = {{"t", times}, {"partial_sum", partial_sums}};
    j["metadata"] = {{"runtime_ms", runtime_ms}};
    return j;
}

VerificationReport HardySteinReport::verification(double tolerance) const {
    VerificationReport r;
    r.identity = "hardy-stein";
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_error = rel_error;
    r.tolerance = tolerance;
    r.passed = rel_error <= tolerance;
    r.details = to_json();
    r.details.erase("metadata");
    r.metadata = {{"runtime_ms", runtime_ms}};
    return r;
}

HardySteinReport hardy_stein_rhs(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                 const GridFunction& f, const PExponent& p) {
    const auto start = std::chrono::steady_clock::now();
    HardySteinReport rep;
    rep.p = p.p;
    rep.grid = grid_json(f.grid());
    rep.quadratures = quadrature_json(jq, tq);
    rep.lhs_raw = std::pow(f.norm_p(p.p), p.p);
    rep.equilibrium = std::pow(equilibrium_projection(symbol, f).norm_p(p.p), p.p);
    rep.lhs = rep.lhs_raw - rep.equilibrium;

    const double hd = f.grid().cell_volume();
    IncrementEngine engine(symbol, jq);
    kernels::Terms terms;
    terms.hs = true;
    terms.p = p.p;
    rep.times = tq.t;
    rep.partial_sums.assign(tq.size(), 0.0);
    engine.evaluate(tq.t, terms, f, nullptr, [&](std::size_t j, double t, const kernels::Accumulators& acc, const auto&) {
        const double s = pairwise_sum(acc.hs) * hd;
        if (!std::isfinite(s)) {
            std::ostringstream msg;
            msg << "non-finite Hardy-Stein partial sum at t=" << t;
            throw NumericalError(msg.str());
        }
        rep.partial_sums[j] = s;
    });
    double rhs = 0.0;
    for (std::size_t j = 0; j < tq.size(); ++j) rhs += tq.v[j] * rep.partial_sums[j];
    rep.rhs = rhs;
    rep.rel_error = relative_error(rep.lhs, rep.rhs);
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace levy
