#include "levy/square_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levy/fft.hpp"
#include "levy/hardy_stein.hpp"
#include "levy/increments.hpp"
#include "levy/reduce.hpp"

namespace levy {

std::string to_string(SquareKind k) {
    switch (k) {
        case SquareKind::G: return "G";
        case SquareKind::Gtilde: return "Gtilde";
        case SquareKind::Gstar: return "Gstar";
        case SquareKind::GstarT: return "GstarT";
    }
    return "?";
}

json SquareFunctionResult::to_json() const {
    return {{"kind", to_string(kind)},
            {"t_lo", t_lo},
            {"t_hi", std::isinf(t_hi) ? json("inf") : json(t_hi)},
            {"grid", grid_json(values.grid())},
            {"quadrature", quadrature},
            {"l2_norm", values.norm_p(2.0)},
            {"max", values.max_abs()}};
}

namespace {

struct Squares {
    std::vector<double> g, gt;
};

Squares integrate_squares(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                          const GridFunction& f, bool want_g, bool want_gt) {
    const std::size_t n = f.size();
    Squares s;
    if (want_g) s.g.assign(n, 0.0);
    if (want_gt) s.gt.assign(n, 0.0);
    IncrementEngine engine(symbol, jq);
    kernels::Terms terms;
    terms.g = want_g;
    terms.gt = want_gt;
    engine.evaluate(tq.t, terms, f, nullptr, [&](std::size_t j, double, const kernels::Accumulators& acc, const auto&) {
        const double v = tq.v[j];
        if (v == 0.0) return;
        for (std::size_t i = 0; i < n; ++i) {
            if (want_g) s.g[i] += v * acc.g[i];
            if (want_gt) s.gt[i] += v * acc.gt[i];
        }
    });
    return s;
}

GridFunction root(const Grid& g, std::vector<double> sq) {
    for (double& x : sq) x = std::sqrt(std::max(0.0, x));
    return GridFunction(g, std::move(sq));
}

SquareFunctionResult wrap(SquareKind k, GridFunction v, const TimeQuadrature& tq, const GridJumpQuadrature& jq,
                          double t_hi) {
    return {k, std::move(v), 0.0, t_hi, quadrature_json(jq, tq)};
}

GridFunction centred(const SymbolGrid& symbol, const GridFunction& f) {
    return f - equilibrium_projection(symbol, f);
}

}  // namespace

SquareFunctionResult square_G(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                              const GridFunction& f) {
    Squares s = integrate_squares(symbol, jq, tq, f, true, false);
    return wrap(SquareKind::G, root(f.grid(), std::move(s.g)), tq, jq, std::numeric_limits<double>::infinity());
}

SquareFunctionResult square_Gtilde(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                   const GridFunction& f) {
    Squares s = integrate_squares(symbol, jq, tq, f, false, true);
    return wrap(SquareKind::Gtilde, root(f.grid(), std::move(s.gt)), tq, jq, std::numeric_limits<double>::infinity());
}

SquarePair square_G_pair(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                         const GridFunction& f) {
    Squares s = integrate_squares(symbol, jq, tq, f, true, true);
    const double inf = std::numeric_limits<double>::infinity();
    return {wrap(SquareKind::G, root(f.grid(), std::move(s.g)), tq, jq, inf),
            wrap(SquareKind::Gtilde, root(f.grid(), std::move(s.gt)), tq, jq, inf)};
}

SquareFunctionResult square_Gstar(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                  const GridFunction& f, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("G_* horizon must be positive");
    const TimeQuadrature q = std::isinf(T) ? tq : tq.truncated(T);
    const Grid& grid = f.grid();
    const std::size_t n = grid.size();
    Fft fft(grid);
    std::vector<cplx> acc_hat(n, cplx(0.0, 0.0));
    IncrementEngine engine(symbol, jq);
    kernels::Terms terms;
    terms.g = true;
    engine.evaluate(q.t, terms, f, nullptr, [&](std::size_t j, double t, const kernels::Accumulators& acc, const auto&) {
        const double v = q.v[j];
        if (v == 0.0) return;
        const std::vector<cplx> S = fft.spectrum(acc.g);
        for (std::size_t k = 0; k < n; ++k) acc_hat[k] += v * std::exp(-t * symbol.psi[k]) * S[k];
    });
    std::vector<double> sq = fft.real_inverse(acc_hat);
    return wrap(std::isinf(T) ? SquareKind::Gstar : SquareKind::GstarT, root(grid, std::move(sq)), q, jq, T);
}

VerificationReport isometry_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                  const GridFunction& f, double tol) {
    const double hd = f.grid().cell_volume();
    Squares s = integrate_squares(symbol, jq, tq, f, true, true);
    const double lhs = std::pow(centred(symbol, f).norm_p(2.0), 2.0);
    const double g2 = pairwise_sum(s.g) * hd;
    const double gt2 = 2.0 * pairwise_sum(s.gt) * hd;
    const double eg = relative_error(lhs, g2), et = relative_error(lhs, gt2);
    VerificationReport r;
    r.identity = "l2-isometry";
    r.lhs = lhs;
    r.rhs = g2;
    r.rel_error = std::max(eg, et);
    r.tolerance = tol;
    r.passed = eg <= tol && et <= tol;
    r.details = {{"norm_f_sq", lhs},
                 {"norm_G_sq", g2},
                 {"twice_norm_Gtilde_sq", gt2},
                 {"rel_error_G", eg},
                 {"rel_error_Gtilde", et},
                 {"raw_norm_f_sq", std::pow(f.norm_p(2.0), 2.0)},
                 {"grid", grid_json(f.grid())},
                 {"quadratures", quadrature_json(jq, tq)}};
    return r;
}

VerificationReport polarization_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                      const TimeQuadrature& tq, const GridFunction& f, const GridFunction& g,
                                      double tol, double abs_tol) {
    const double hd = f.grid().cell_volume();
    const GridFunction fc = centred(symbol, f), gc = centred(symbol, g);
    const double lhs = fc.inner(gc);
    IncrementEngine engine(symbol, jq);
    kernels::Terms terms;
    terms.cross = true;
    double rhs = 0.0;
    engine.evaluate(tq.t, terms, f, &g, [&](std::size_t j, double, const kernels::Accumulators& acc, const auto&) {
        rhs += tq.v[j] * pairwise_sum(acc.cross) * hd;
    });
    const double scale = fc.norm_p(2.0) * gc.norm_p(2.0);
    const double abs_err = std::abs(rhs - lhs);
    VerificationReport r;
    r.identity = "polarization";
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_error = relative_error(lhs, rhs);
    r.tolerance = tol;
    r.passed = r.rel_error <= tol || abs_err <= abs_tol * scale;
    r.details = {{"abs_error", abs_err},
                 {"abs_error_over_norms", scale > 0.0 ? abs_err / scale : 0.0},
                 {"abs_tolerance", abs_tol},
                 {"grid", grid_json(f.grid())},
                 {"quadratures", quadrature_json(jq, tq)}};
    return r;
}

bool NormEquivalenceReport::passed() const {
    if (ratios.empty()) return false;
    for (double r : ratios)
        if (!(r > 0.0) || !std::isfinite(r)) return false;
    if (refined && !(drift <= drift_tol)) return false;
    if (p == 2.0)
        for (double r : ratios)
            if (std::abs(r - std::sqrt(0.5)) > 1e-2) return false;
    return true;
}

json NormEquivalenceReport::to_json() const {
    json j{{"p", p},
           {"family", family},
           {"labels", labels},
           {"ratios", ratios},
           {"min_ratio", min_ratio},
           {"max_ratio", max_ratio},
           {"refined", refined},
           {"notes", notes},
           {"passed", passed()}};
    if (refined) {
        j["drift"] = drift;
        j["drift_tolerance"] = drift_tol;
    }
    return j;
}

VerificationReport NormEquivalenceReport::verification() const {
    VerificationReport r;
    r.identity = "norm-equivalence";
    r.lhs = min_ratio;
    r.rhs = max_ratio;
    r.rel_error = refined ? drift : 0.0;
    r.tolerance = drift_tol;
    r.passed = passed();
    r.details = to_json();
    return r;
}

NormEquivalenceReport norm_equivalence_report(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                              const TimeQuadrature& tq, std::span<const GridFunction> family,
                                              double p, const std::vector<std::string>& labels) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("norm equivalence needs 1 < p < inf");
    if (family.empty()) throw std::invalid_argument("empty test family");
    NormEquivalenceReport rep;
    rep.p = p;
    rep.family = {{"size", family.size()}, {"grid", grid_json(family.front().grid())}};
    for (std::size_t i = 0; i < family.size(); ++i) {
        const std::string label = i < labels.size() ? labels[i] : "member-" + std::to_string(i);
        const double denom = centred(symbol, family[i]).norm_p(p);
        if (!(denom > 0.0)) {
            rep.notes.push_back(label + ": zero after removing the equilibrium part, skipped");
            continue;
        }
        const SquareFunctionResult gt = square_Gtilde(symbol, jq, tq, family[i]);
        rep.labels.push_back(label);
        rep.ratios.push_back(gt.values.norm_p(p) / denom);
    }
    if (!rep.ratios.empty()) {
        rep.min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
        rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    }
    return rep;
}

void attach_refinement(NormEquivalenceReport& coarse, const NormEquivalenceReport& fine, double drift_tol) {
    if (coarse.p != fine.p) throw std::invalid_argument("refinement report has a different exponent");
    coarse.refined = true;
    coarse.drift_tol = drift_tol;
    coarse.drift = std::max(std::abs(fine.min_ratio / coarse.min_ratio - 1.0),
                            std::abs(fine.max_ratio / coarse.max_ratio - 1.0));
    coarse.family["refined_grid"] = fine.family["grid"];
    coarse.family["refined_ratios"] = fine.ratios;
}

VerificationReport duality_bound_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                       const TimeQuadrature& tq, const GridFunction& f, const GridFunction& h,
                                       double p, double slack) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("duality bound is stated for 1 < p <= 2");
    const double q = p / (p - 1.0);
    const double hd = f.grid().cell_volume();
    const double lhs = std::abs(centred(symbol, f).inner(centred(symbol, h)));
    const SquareFunctionResult gtf = square_Gtilde(symbol, jq, tq, f);
    const SquareFunctionResult gh = square_G(symbol, jq, tq, h);
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = gtf.values[i] * gh.values[i];
    const double rhs = 2.0 * pairwise_sum(prod) * hd;
    VerificationReport r;
    r.identity = "duality-bound";
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_error = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    r.tolerance = slack;
    r.passed = lhs <= rhs + slack;
    r.details = {{"p", p},
                 {"q", q},
                 {"holder_bound", 2.0 * gtf.values.norm_p(p) * gh.values.norm_p(q)},
                 {"slack", slack},
                 {"lhs_over_rhs", r.rel_error}};
    return r;
}

}  // namespace levy
