#include "levy/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "levy/errors.hpp"
#include "levy/hardy_stein.hpp"
#include "levy/increments.hpp"
#include "levy/reduce.hpp"
#include "levy/rng.hpp"
#include "levy/square_fn.hpp"

namespace levy {

std::string to_string(ModulatorKind k) {
    switch (k) {
        case ModulatorKind::Constant: return "constant";
        case ModulatorKind::TimeIndependent: return "time-independent";
        case ModulatorKind::Separable: return "separable";
        case ModulatorKind::MarcinkiewiczSelector: return "marcinkiewicz-selector";
    }
    return "?";
}

Modulator Modulator::constant(double c) {
    Modulator m;
    m.kind = ModulatorKind::Constant;
    m.label = "constant";
    m.value = c;
    m.sup_norm = std::abs(c);
    return m;
}

Modulator Modulator::time_independent(std::function<double(const Vec2&)> k, double sup_norm, std::string label) {
    Modulator m;
    m.kind = ModulatorKind::TimeIndependent;
    m.k = std::move(k);
    m.sup_norm = sup_norm;
    m.label = std::move(label);
    return m;
}

Modulator Modulator::separable(std::function<double(double)> g, std::function<double(const Vec2&)> k, double sup_norm,
                               std::string label) {
    Modulator m;
    m.kind = ModulatorKind::Separable;
    m.g = std::move(g);
    m.k = std::move(k);
    m.sup_norm = sup_norm;
    m.label = std::move(label);
    return m;
}

Modulator Modulator::marcinkiewicz_selector(int j, double alpha) {
    if (j < 1 || j > 2) throw std::invalid_argument("selector axis must be 1 or 2");
    Modulator m;
    m.kind = ModulatorKind::MarcinkiewiczSelector;
    m.axis = j;
    m.alpha = alpha;
    m.sup_norm = 1.0;
    m.label = "marcinkiewicz-" + std::to_string(j);
    return m;
}

double Modulator::y_part(const Vec2& y) const {
    switch (kind) {
        case ModulatorKind::Constant: return value;
        case ModulatorKind::TimeIndependent:
        case ModulatorKind::Separable: return k(y);
        case ModulatorKind::MarcinkiewiczSelector: {
            const int a = axis - 1, o = 1 - a;
            return (y[a] != 0.0 && y[o] == 0.0) ? 1.0 : 0.0;
        }
    }
    return 0.0;
}

double Modulator::t_part(double t) const { return kind == ModulatorKind::Separable ? g(t) : 1.0; }

double Modulator::operator()(double t, const Vec2& y) const { return t_part(t) * y_part(y); }

void Modulator::validate(int d, std::size_t samples, std::uint64_t seed) const {
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = std::pow(10.0, rng.uniform(-6.0, 3.0));
        Vec2 y{rng.uniform(-10.0, 10.0), d == 2 ? rng.uniform(-10.0, 10.0) : 0.0};
        if (d == 2 && i % 2 == 0) y[i % 4 == 0 ? 0 : 1] = 0.0;
        const double v = (*this)(t, y);
        if (!(std::abs(v) <= sup_norm + 1e-12)) {
            std::ostringstream msg;
            msg << "modulator " << label << " reaches |phi| = " << std::abs(v) << " above its declared bound " << sup_norm;
            throw std::invalid_argument(msg.str());
        }
    }
}

json Modulator::to_json() const {
    json j{{"kind", to_string(kind)}, {"label", label}, {"sup_norm", sup_norm}};
    if (kind == ModulatorKind::Constant) j["value"] = value;
    if (kind == ModulatorKind::MarcinkiewiczSelector) {
        j["axis"] = axis;
        j["alpha"] = alpha;
    }
    return j;
}

double MultiplierSymbol::sup() const {
    double s = 0.0;
    for (double v : m) s = std::max(s, std::abs(v));
    return s;
}

namespace {

GridJumpQuadrature weighted_quadrature(const GridJumpQuadrature& jq, const Modulator& phi) {
    if (phi.kind == ModulatorKind::MarcinkiewiczSelector) {
        if (jq.model.kind() != ModelKind::AxisStable)
            throw UnsupportedError("the Marcinkiewicz selector needs the axis-stable measure");
        if (jq.model.alpha() != phi.alpha) throw std::invalid_argument("selector exponent differs from the model's alpha");
    }
    return build_grid_quadrature(jq.model, jq.grid, jq.options, [&phi](const Vec2& y) { return phi.y_part(y); });
}

void fill_origin(const Grid& g, std::vector<double>& m) {
    const int N = g.n();
    double s = 0.0;
    if (g.dim() == 1) {
        s = 0.5 * (m[1] + m[std::size_t(N) - 1]);
    } else {
        s = 0.25 * (m[g.index(1, 0)] + m[g.index(N - 1, 0)] + m[g.index(0, 1)] + m[g.index(0, N - 1)]);
    }
    m[0] = s;
}

}  // namespace

MultiplierSymbol symbol_from_phi(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                 const Modulator& phi) {
    const Grid& g = symbol.grid;
    if (!(jq.grid == g)) throw std::invalid_argument("symbol and quadrature grids differ");
    if (symbol.degenerate_modes() > 0)
        throw ModelError("psi vanishes at a nonzero dual-grid frequency; the multiplier symbol is undefined there");
    const std::vector<double> D = implied_symbol_grid(jq);
    const std::vector<double> Nk = implied_symbol_grid(weighted_quadrature(jq, phi));
    MultiplierSymbol out{g, std::vector<double>(g.size(), 0.0), json::object()};
    for (std::size_t k = 1; k < g.size(); ++k) {
        if (!(D[k] > 0.0)) throw ModelError("quadrature symbol vanishes at a nonzero dual-grid frequency");
        out.m[k] = Nk[k] / D[k];
    }
    if (phi.kind == ModulatorKind::Separable) {
        for (std::size_t k = 1; k < g.size(); ++k) {
            const double psi = symbol.psi[k];
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j < tq.size(); ++j) {
                const double w = tq.v[j] * 2.0 * psi * std::exp(-2.0 * tq.t[j] * psi);
                num += w * phi.g(tq.t[j]);
                den += w;
            }
            out.m[k] *= den > 0.0 ? num / den : 0.0;
        }
    }
    fill_origin(g, out.m);
    out.provenance = {{"modulator", phi.to_json()},
                      {"method", phi.kind == ModulatorKind::Separable ? "ratio-times-time-average" : "ratio"},
                      {"origin", "mean of the 2d nearest dual-grid neighbours"},
                      {"quadrature", {{"eps", jq.eps}, {"r_near", jq.r_near}, {"near_nodes", jq.near.size()},
                                      {"lattice_nodes", jq.far.size()}}}};
    if (phi.kind == ModulatorKind::Separable) out.provenance["time_nodes"] = tq.size();
    return out;
}

double marcinkiewicz_symbol(double alpha, int j, const Vec2& xi, int d) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in (0, 2)");
    if (j < 1 || j > d) throw std::invalid_argument("selector index out of range");
    if (xi[0] == 0.0 && (d == 1 || xi[1] == 0.0)) throw std::domain_error("Marcinkiewicz symbol is undefined at 0");
    double den = 0.0;
    for (int i = 0; i < d; ++i) den += std::pow(std::abs(xi[i]), alpha);
    return std::pow(std::abs(xi[j - 1]), alpha) / den;
}

MultiplierSymbol marcinkiewicz_closed_form(const Grid& grid, double alpha, int j) {
    MultiplierSymbol out{grid, std::vector<double>(grid.size(), 0.0),
                         {{"method", "closed-form"}, {"alpha", alpha}, {"axis", j}}};
    for (std::size_t k = 1; k < grid.size(); ++k) out.m[k] = marcinkiewicz_symbol(alpha, j, grid.dual_point(k), grid.dim());
    fill_origin(grid, out.m);
    return out;
}

GridFunction apply_multiplier(const MultiplierSymbol& m, const GridFunction& f) {
    if (!(m.grid == f.grid())) throw std::invalid_argument("multiplier and function grids differ");
    SpectrumFunction F = forward_transform(f);
    for (std::size_t k = 0; k < F.values.size(); ++k) F.values[k] *= m.m[k];
    return inverse_transform(F);
}

double pairing_time_domain(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                           const Modulator& phi, const GridFunction& f, const GridFunction& h) {
    if (phi.kind == ModulatorKind::Constant && phi.value == 0.0) return 0.0;
    const GridJumpQuadrature wq = weighted_quadrature(jq, phi);
    const double hd = f.grid().cell_volume();
    IncrementEngine engine(symbol, wq);
    kernels::Terms terms;
    terms.cross = true;
    std::vector<double> per_time(tq.size(), 0.0);
    engine.evaluate(tq.t, terms, f, &h, [&](std::size_t j, double t, const kernels::Accumulators& acc, const auto&) {
        per_time[j] = tq.v[j] * phi.t_part(t) * pairwise_sum(acc.cross) * hd;
    });
    return pairwise_sum(per_time);
}

double pairing_fourier_domain(const MultiplierSymbol& m, const GridFunction& f, const GridFunction& h) {
    if (!(m.grid == f.grid()) || !(m.grid == h.grid())) throw std::invalid_argument("grid mismatch");
    const SpectrumFunction F = forward_transform(f), H = forward_transform(h);
    std::vector<double> terms(F.values.size());
    for (std::size_t k = 0; k < terms.size(); ++k) terms[k] = m.m[k] * (F.values[k] * std::conj(H.values[k])).real();
    return pairwise_sum(terms) / std::pow(2.0 * m.grid.half_width(), m.grid.dim());
}

VerificationReport pairing_bound_check(const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                       const TimeQuadrature& tq, const Modulator& phi, const GridFunction& f,
                                       const GridFunction& h, double p, double slack) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must lie in (1, inf)");
    const double q = p / (p - 1.0);
    const double lambda = pairing_time_domain(symbol, jq, tq, phi, f, h);
    // For p > 2 the restricted function moves to the second slot.
    const bool swap = p > 2.0;
    const SquareFunctionResult a = swap ? square_G(symbol, jq, tq, f) : square_Gtilde(symbol, jq, tq, f);
    const SquareFunctionResult b = swap ? square_Gtilde(symbol, jq, tq, h) : square_G(symbol, jq, tq, h);
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a.values[i] * b.values[i];
    const double rhs = 2.0 * phi.sup_norm * pairwise_sum(prod) * f.grid().cell_volume();
    VerificationReport r;
    r.identity = "pairing-bound";
    r.lhs = std::abs(lambda);
    r.rhs = rhs;
    r.rel_error = rhs > 0.0 ? r.lhs / rhs : 0.0;
    r.tolerance = slack;
    r.passed = r.lhs <= rhs + slack;
    r.details = {{"lambda", lambda},
                 {"p", p},
                 {"q", q},
                 {"restricted_slot", swap ? "h" : "f"},
                 {"holder_bound", 2.0 * phi.sup_norm * a.values.norm_p(p) * b.values.norm_p(q)},
                 {"modulator", phi.to_json()}};
    return r;
}

bool MultiplierNormReport::passed() const {
    if (ratios.empty()) return false;
    for (double r : ratios)
        if (!std::isfinite(r) || r < 0.0) return false;
    if (p == 2.0 && max_ratio > m_sup + 1e-10) return false;
    if (refined && !(drift <= drift_tol)) return false;
    return true;
}

json MultiplierNormReport::to_json() const {
    json j{{"p", p}, {"labels", labels}, {"ratios", ratios}, {"max_ratio", max_ratio}, {"m_sup", m_sup},
           {"refined", refined}, {"passed", passed()}};
    if (refined) {
        j["drift"] = drift;
        j["drift_tolerance"] = drift_tol;
    }
    return j;
}

VerificationReport MultiplierNormReport::verification() const {
    VerificationReport r;
    r.identity = "multiplier-norm";
    r.lhs = max_ratio;
    r.rhs = m_sup;
    r.rel_error = refined ? drift : 0.0;
    r.tolerance = drift_tol;
    r.passed = passed();
    r.details = to_json();
    return r;
}

MultiplierNormReport multiplier_norm_report(const MultiplierSymbol& m, std::span<const GridFunction> family, double p,
                                            const std::vector<std::string>& labels) {
    if (family.empty()) throw std::invalid_argument("empty test family");
    MultiplierNormReport rep{p, {}, {}, 0.0, m.sup()};
    for (std::size_t i = 0; i < family.size(); ++i) {
        const double den = family[i].norm_p(p);
        if (!(den > 0.0)) continue;
        rep.labels.push_back(i < labels.size() ? labels[i] : "member-" + std::to_string(i));
        rep.ratios.push_back(apply_multiplier(m, family[i]).norm_p(p) / den);
    }
    if (!rep.ratios.empty()) rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    return rep;
}

void attach_refinement(MultiplierNormReport& coarse, const MultiplierNormReport& fine, double drift_tol) {
    coarse.refined = true;
    coarse.drift_tol = drift_tol;
    coarse.drift = std::abs(fine.max_ratio / coarse.max_ratio - 1.0);
}

}  // namespace levy
