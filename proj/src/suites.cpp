#include "levy/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numbers>
#include <optional>

#include <omp.h>

#include "levy/divergence.hpp"
#include "levy/errors.hpp"
#include "levy/fft.hpp"
#include "levy/hardy_stein.hpp"
#include "levy/io.hpp"
#include "levy/jump_quadrature.hpp"
#include "levy/mc.hpp"
#include "levy/multiplier.hpp"
#include "levy/rng.hpp"
#include "levy/spectral.hpp"
#include "levy/square_fn.hpp"
#include "levy/workbench.hpp"

namespace levy {

namespace {

using clk = std::chrono::steady_clock;

struct Context {
    const RunConfig& cfg;
    fs::path out;
    Grid grid;
    LevyModel model;
    SuiteResult* result = nullptr;

    std::optional<JumpQuadrature> free_;
    std::optional<SymbolGrid> symbol_;
    std::optional<Workbench> wb_;

    Context(const RunConfig& c) : cfg(c), out(c.output_dir), grid(c.grid.build()), model(c.model.build()) {}

    JumpQuadrature build_free(double scale) const {
        const double eps = (cfg.jump.eps > 0.0 ? cfg.jump.eps : 0.5 * grid.h()) / scale;
        const double rmax = (cfg.jump.rmax > 0.0 ? cfg.jump.rmax : 4.0 * grid.half_width()) * scale;
        return build_jump_quadrature(model, eps, rmax, int(cfg.jump.n_radial * scale),
                                     int(cfg.jump.n_angular * scale));
    }

    const JumpQuadrature& free_quad() {
        if (!free_) free_ = build_free(1.0);
        return *free_;
    }

    SymbolGrid symbol_on(const Grid& g) {
        if (model.has_closed_form()) return build_symbol_grid(model, g);
        return build_symbol_grid(model, g, &free_quad());
    }

    const SymbolGrid& symbol() {
        if (!symbol_) symbol_ = symbol_on(grid);
        return *symbol_;
    }

    Workbench workbench_on(const Grid& g) {
        SymbolGrid s = g == grid ? symbol() : symbol_on(g);
        GridJumpQuadrature jq = build_grid_quadrature(model, g, cfg.grid_quadrature);
        TimeQuadrature tq = make_time_quadrature(s, cfg.time);
        return {std::move(s), std::move(jq), std::move(tq)};
    }

    const Workbench& wb() {
        if (!wb_) {
            wb_ = workbench_on(grid);
            result->params["quadratures"] = quadrature_json(wb_->jq, wb_->tq);
        }
        return *wb_;
    }

    std::vector<TestFunction> family() const { return cfg.family.resolve(grid.dim(), grid.half_width()); }

    std::vector<GridFunction> samples(const Grid& g, const std::vector<TestFunction>& fam) const {
        std::vector<GridFunction> s;
        for (const TestFunction& tf : fam) {
            s.push_back(tf.sample(g));
            require_leakage_compliant(s.back(), "family member '" + tf.label + "'");
        }
        return s;
    }

    void add(VerificationReport r) { result->reports.push_back(std::move(r)); }
    void note(const std::string& s) { result->notes.push_back(s); }
    fs::path artifact(const std::string& name) {
        result->artifacts.push_back(name);
        return out / name;
    }
};

std::vector<std::string> labels_of(const std::vector<TestFunction>& fam) {
    std::vector<std::string> l;
    for (const TestFunction& tf : fam) l.push_back(tf.label);
    return l;
}

VerificationReport make_report(std::string identity, double lhs, double rhs, double err, double tol, bool passed,
                               json details = json::object()) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_error = err;
    r.tolerance = tol;
    r.passed = passed;
    r.details = std::move(details);
    return r;
}

std::vector<Vec2> xi_samples(int d) {
    std::vector<Vec2> out;
    const std::vector<double> angles = d == 1 ? std::vector<double>{0.0} : std::vector<double>{0.0, 0.37, 0.785};
    for (int i = 0; i < 25; ++i) {
        const double r = 0.5 * std::pow(16.0, i / 24.0);
        for (double th : angles) out.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return out;
}

// ---------------------------------------------------------------- symbol

void symbol_suite(Context& c) {
    const Tolerances& tol = c.cfg.tolerances;
    const JumpQuadrature& q = c.free_quad();
    c.result->params["free_jump"] = {{"eps", q.eps},
                                     {"rmax", q.rmax},
                                     {"n_radial", q.n_radial},
                                     {"n_angular", q.n_angular},
                                     {"nodes", q.nodes.size()}};
    const std::vector<Vec2> xs = xi_samples(c.grid.dim());
    std::optional<JumpQuadrature> fine;
    auto refined = [&]() -> const JumpQuadrature& {
        if (!fine) fine = c.build_free(2.0);
        return *fine;
    };

    {
        const bool closed = c.model.has_closed_form();
        double worst = 0.0, at = 0.0, ref_at = 0.0, quad_at = 0.0;
        json rows = json::array();
        for (const Vec2& xi : xs) {
            const double quad = symbol_quadrature(q, xi);
            const double ref = closed ? c.model.symbol_closed_form(xi) : symbol_quadrature(refined(), xi);
            const double err = relative_error(ref, quad);
            rows.push_back({norm(xi), std::atan2(xi[1], xi[0]), ref, quad});
            if (err >= worst) {
                worst = err;
                at = norm(xi);
                ref_at = ref;
                quad_at = quad;
            }
        }
        if (!closed) c.note("symbol-accuracy: no closed form for " + to_string(c.model.kind()) +
                            "; compared against the quadrature refined twofold in eps, rmax and node counts");
        c.add(make_report(closed ? "symbol-accuracy" : "symbol-refinement", ref_at, quad_at, worst, tol.symbol,
                          worst <= tol.symbol,
                          {{"oracle", closed ? "closed-form" : "refined-quadrature"},
                           {"worst_at_abs_xi", at},
                           {"columns", {"abs_xi", "angle", "reference", "quadrature"}},
                           {"samples", rows}}));
    }
    {
        const double v = check_levy_condition(c.model, q);
        const double v2 = check_levy_condition(c.model, refined());
        const double err = relative_error(v2, v);
        c.add(make_report("levy-condition", v2, v, err, tol.symbol, std::isfinite(v) && err <= tol.symbol,
                          {{"integral_one_wedge_sq", v}, {"refined", v2}}));
    }
    {
        Rng rng(derive_seed(c.cfg.seed, 1));
        double worst_density = 0.0, worst_symbol = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double r = std::exp(rng.uniform(std::log(1e-3), std::log(50.0)));
            const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const Vec2 y = c.grid.dim() == 1 ? Vec2{rng.uniform() < 0.5 ? -r : r, 0.0}
                                             : Vec2{r * std::cos(th), r * std::sin(th)};
            const double a = c.model.density(y), b = c.model.density({-y[0], -y[1]});
            worst_density = std::max(worst_density, relative_error(a, b));
        }
        for (const Vec2& xi : xs) {
            const double a = symbol_quadrature(q, xi), b = symbol_quadrature(q, {-xi[0], -xi[1]});
            worst_symbol = std::max(worst_symbol, relative_error(a, b));
        }
        const double err = std::max(worst_density, worst_symbol);
        c.add(make_report("symmetry", 0.0, err, err, 1e-12, err <= 1e-12,
                          {{"density_rel_asymmetry", worst_density}, {"symbol_rel_asymmetry", worst_symbol}}));
    }
    {
        const std::vector<double> mags{4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0};
        const HartmanWintnerResult hw = check_hartman_wintner(c.model, mags);
        json ratios = json::array();
        for (const auto& [m, r] : hw.ratios) ratios.push_back({m, r});
        c.add(make_report("hartman-wintner", hw.ratios.front().second, hw.ratios.back().second, 0.0, 0.0,
                          hw.increasing, {{"ratios", ratios}, {"increasing", hw.increasing}}));
    }
    write_dual_csv(c.grid, c.symbol().psi, c.artifact("symbol.csv"), "psi");
}

// ---------------------------------------------------------------- density

void density_suite(Context& c) {
    const Tolerances& tol = c.cfg.tolerances;
    if (c.model.kind() == ModelKind::CompoundPoisson) {
        c.note("density: the compound-Poisson law has an atom at the origin, so there is no transition density");
        return;
    }
    const SymbolGrid& symbol = c.symbol();
    const Grid& g = c.grid;
    const double t = 1.0;
    const GridFunction p = transition_density(symbol, t);
    const double hd = g.cell_volume();
    {
        const double mass = p.integral();
        c.add(make_report("density-mass", 1.0, mass, std::abs(mass - 1.0), tol.mass, std::abs(mass - 1.0) <= tol.mass,
                          {{"t", t}}));
    }
    {
        const int N = g.n();
        double pmax = 0.0, pmin = 0.0, asym = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            pmax = std::max(pmax, p[i]);
            pmin = std::min(pmin, p[i]);
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::size_t j;
            if (g.dim() == 1)
                j = (N - int(i)) % N;
            else
                j = g.index((N - int(i) / N) % N, (N - int(i) % N) % N);
            asym = std::max(asym, std::abs(p[i] - p[j]));
        }
        const bool ok = -pmin <= 1e-8 * pmax && asym <= 1e-12 * pmax;
        c.add(make_report("density-shape", pmax, pmin, std::max(-pmin, asym) / pmax, 1e-8, ok,
                          {{"max", pmax}, {"min", pmin}, {"max_asymmetry", asym}}));
    }
    if (c.model.kind() == ModelKind::IsotropicStable && c.model.alpha() == 1.0) {
        double worst = 0.0, at = 0.0;
        const double L = g.half_width();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Vec2 x = g.point(i);
            if (norm(x) > 0.5 * L) continue;
            const double ref = cauchy_periodized(g.dim(), t, x, L);
            const double err = std::abs(p[i] - ref) / ref;
            if (err > worst) {
                worst = err;
                at = norm(x);
            }
        }
        c.add(make_report("density-closed-form", cauchy_closed_form(g.dim(), t, {0.0, 0.0}), p[g.size() / 2], worst,
                          tol.density, worst <= tol.density,
                          {{"oracle", "Cauchy density summed over periodic images"}, {"worst_at_abs_x", at}}));
        c.add(subordination_check_alpha1(c.model, g, t));
    } else {
        c.note("density-closed-form: only the Cauchy case (isotropic, alpha = 1) has a closed-form oracle");
    }
    {
        const double s = t;
        const GridFunction ps = p;
        const GridFunction pt = p;
        const GridFunction p2 = transition_density(symbol, s + t);
        Fft fft(g);
        std::vector<cplx> A = fft.spectrum(ps.values()), B = fft.spectrum(pt.values());
        // circular convolution: sum_y p_s(x - y) p_t(y) h^d, with x = 0 at index n/2
        for (std::size_t k = 0; k < A.size(); ++k) A[k] *= B[k];
        std::vector<double> conv = fft.real_inverse(A);
        const int N = g.n();
        const std::size_t shift = g.dim() == 1 ? std::size_t(N / 2) : g.index(N / 2, N / 2);
        double l1 = 0.0;
        for (std::size_t i = 0; i < conv.size(); ++i) {
            std::size_t j;
            if (g.dim() == 1)
                j = (i + shift) % conv.size();
            else
                j = g.index((int(i) / N + N / 2) % N, (int(i) % N + N / 2) % N);
            l1 += std::abs(conv[j] * hd - p2[i]);
        }
        l1 *= hd;
        c.add(make_report("chapman-kolmogorov", 0.0, l1, l1, tol.chapman_kolmogorov, l1 <= tol.chapman_kolmogorov,
                          {{"s", s}, {"t", t}, {"norm", "L1"}, {"compares", "p_s * p_t against p_(s+t)"}}));
    }
    write_grid_csv(p, c.artifact("density_t1.csv"), "p");
}

// ---------------------------------------------------------------- hardy-stein

double loglog_slope(const std::vector<double>& n, const std::vector<double>& e) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        mx += std::log(n[i]);
        my += std::log(e[i]);
    }
    mx /= n.size();
    my /= n.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        sxy += (std::log(n[i]) - mx) * (std::log(e[i]) - my);
        sxx += (std::log(n[i]) - mx) * (std::log(n[i]) - mx);
    }
    return -sxy / sxx;
}

void hardy_stein_suite(Context& c) {
    const Tolerances& tol = c.cfg.tolerances;
    const HardySteinConfig& hc = c.cfg.hardy_stein;
    const Workbench& wb = c.wb();
    const TestFunction bump = unit_gaussian();
    const GridFunction f = bump.sample(c.grid);
    require_leakage_compliant(f, "unit Gaussian");

    std::vector<HardySteinReport> base;
    for (double p : hc.p) {
        base.push_back(hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, f, PExponent(p)));
        c.add(base.back().verification(tol.hardy_stein));
    }
    {
        std::vector<std::string> header{"t"};
        for (double p : hc.p) header.push_back("p=" + json(p).dump());
        std::vector<std::vector<double>> rows;
        for (std::size_t j = 0; j < wb.tq.size(); ++j) {
            std::vector<double> row{wb.tq.t[j]};
            for (const HardySteinReport& r : base) row.push_back(r.partial_sums[j]);
            rows.push_back(std::move(row));
        }
        write_table_csv(c.artifact("hardy_stein_partial_sums.csv"), header, rows);
    }

    if (hc.refinement && c.model.kind() == ModelKind::CompoundPoisson) {
        c.note("hardy-stein-refinement: a finite Levy measure has no near-origin singularity, so the grid error "
               "does not depend on N and there is no slope to measure");
    } else if (hc.refinement && c.grid.n() >= 16) {
        const Grid coarse(c.grid.dim(), c.grid.n() / 2, c.grid.half_width());
        const Grid finer(c.grid.dim(), c.grid.n() * 2, c.grid.half_width());
        const Workbench wc = c.workbench_on(coarse), wf = c.workbench_on(finer);
        const GridFunction fc = bump.sample(coarse), ff = bump.sample(finer);
        for (std::size_t i = 0; i < hc.p.size(); ++i) {
            const PExponent p(hc.p[i]);
            const std::vector<double> ns{double(coarse.n()), double(c.grid.n()), double(finer.n())};
            const std::vector<double> errs{hardy_stein_rhs(wc.symbol, wc.jq, wc.tq, fc, p).rel_error,
                                           base[i].rel_error,
                                           hardy_stein_rhs(wf.symbol, wf.jq, wf.tq, ff, p).rel_error};
            const double slope = loglog_slope(ns, errs);
            // errors already at roundoff carry no slope information
            const bool floor = *std::max_element(errs.begin(), errs.end()) < 1e-10;
            c.add(make_report("hardy-stein-refinement", errs.front(), errs.back(), slope, tol.hs_slope,
                              floor || slope >= tol.hs_slope,
                              {{"p", hc.p[i]},
                               {"N", ns},
                               {"rel_errors", errs},
                               {"slope", slope},
                               {"criterion", "slope >= tolerance"},
                               {"at_roundoff", floor}}));
        }
    }

    for (std::size_t i = 0; i < hc.lemma_p.size(); ++i) {
        const PExponent p(hc.lemma_p[i]);
        const RegularizedBoundCheck rb =
            regularized_bound_check(p, hc.lemma_samples, derive_seed(c.cfg.seed, 100 + i), tol.lemma_slack);
        c.add(make_report("regularized-bound", 0.0, rb.max_excess, rb.max_excess, tol.lemma_slack, rb.passed,
                          {{"p", p.p}, {"samples", rb.samples}, {"min_value", rb.min_value}}));
        const TaylorBoundRatios a = taylor_bound_ratios(p, hc.lemma_samples, derive_seed(c.cfg.seed, 200 + i));
        const TaylorBoundRatios b = taylor_bound_ratios(p, hc.lemma_samples, derive_seed(c.cfg.seed, 300 + i));
        const double drift = std::max(std::abs(a.min_ratio / b.min_ratio - 1.0), std::abs(a.max_ratio / b.max_ratio - 1.0));
        const bool ok = std::isfinite(a.max_ratio) && std::isfinite(b.max_ratio) && a.min_ratio > 0.0 &&
                        b.min_ratio > 0.0 && drift <= tol.ratio_seed_stability;
        c.add(make_report("taylor-bound-ratios", a.min_ratio, a.max_ratio, drift, tol.ratio_seed_stability, ok,
                          {{"p", p.p},
                           {"seed_a", {{"min", a.min_ratio}, {"max", a.max_ratio}, {"skipped", a.skipped}}},
                           {"seed_b", {{"min", b.min_ratio}, {"max", b.max_ratio}, {"skipped", b.skipped}}}}));
    }

    const std::vector<TestFunction> fam = c.family();
    const std::vector<GridFunction> samples = c.samples(c.grid, fam);
    const std::vector<double> times = log_spaced_times(1e-4, wb.tq.t_max, 40);
    std::vector<GridFunction> fstar;
    for (const GridFunction& s : samples) fstar.push_back(maximal_function(wb.symbol, s, times));
    for (double p : hc.maximal_p) {
        const double c_p = p / (p - 1.0);
        double worst = 0.0;
        std::string worst_label;
        json ratios = json::array();
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double r = fstar[i].norm_p(p) / (c_p * samples[i].norm_p(p));
            ratios.push_back(r);
            if (r > worst) {
                worst = r;
                worst_label = fam[i].label;
            }
        }
        c.add(make_report("maximal-inequality", 1.0, worst, worst - 1.0, tol.maximal, worst <= 1.0 + tol.maximal,
                          {{"p", p},
                           {"constant", c_p},
                           {"ratio", "||f*||_p / (p/(p-1) ||f||_p)"},
                           {"labels", labels_of(fam)},
                           {"ratios", ratios},
                           {"worst", worst_label},
                           {"time_nodes", times.size()}}));
    }
}

// ---------------------------------------------------------------- square-fn

void square_fn_suite(Context& c) {
    const Tolerances& tol = c.cfg.tolerances;
    const SquareFnConfig& sc = c.cfg.square_fn;
    const Workbench& wb = c.wb();
    const std::vector<TestFunction> fam = c.family();
    const std::vector<GridFunction> samples = c.samples(c.grid, fam);

    for (std::size_t i = 0; i < samples.size(); ++i) {
        VerificationReport r = isometry_check(wb.symbol, wb.jq, wb.tq, samples[i], tol.isometry);
        r.details["label"] = fam[i].label;
        c.add(std::move(r));
    }
    for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
        VerificationReport r = polarization_check(wb.symbol, wb.jq, wb.tq, samples[i], samples[i + 1], tol.polarization);
        r.details["labels"] = {fam[i].label, fam[i + 1].label};
        c.add(std::move(r));
    }

    std::vector<double> ps = sc.p;
    if (std::find(ps.begin(), ps.end(), 2.0) == ps.end()) ps.push_back(2.0);
    std::optional<Workbench> fine;
    std::vector<GridFunction> fine_samples;
    if (sc.refinement) {
        const Grid g2(c.grid.dim(), c.grid.n() * 2, c.grid.half_width());
        fine = c.workbench_on(g2);
        fine_samples = c.samples(g2, fam);
    }
    for (double p : ps) {
        NormEquivalenceReport r = norm_equivalence_report(wb.symbol, wb.jq, wb.tq, samples, p, labels_of(fam));
        if (fine)
            attach_refinement(r,
                              norm_equivalence_report(fine->symbol, fine->jq, fine->tq, fine_samples, p, labels_of(fam)),
                              tol.norm_drift);
        c.add(r.verification());
    }

    for (int i = 0; i < sc.duality_pairs; ++i) {
        const auto [f, h] = random_zero_mass_pair(c.grid.dim(), c.grid.half_width(), derive_seed(c.cfg.seed, 400 + i));
        VerificationReport r = duality_bound_check(wb.symbol, wb.jq, wb.tq, f.sample(c.grid), h.sample(c.grid),
                                                   sc.duality_p, tol.duality_slack);
        r.details["pair"] = i;
        c.add(std::move(r));
    }

    if (sc.divergence) {
        const Grid g2(2, sc.divergence_N, c.grid.half_width());
        const std::vector<double> s{1e-1, 1e-2, 1e-3, 1e-4};
        for (ProbeProfile prof : {ProbeProfile::Singular, ProbeProfile::Smooth}) {
            const DivergenceProbe probe = divergence_probe(g2, s, prof, ProbeRoute::Radial);
            VerificationReport r = divergence_verdict(probe);
            r.details["probe"] = probe.to_json();
            c.add(std::move(r));
            std::vector<std::string> header{"s"};
            for (std::size_t k = 0; k < probe.points.size(); ++k) header.push_back("point" + std::to_string(k));
            std::vector<std::vector<double>> rows;
            for (const DivergenceRow& row : probe.rows) {
                std::vector<double> v{row.s};
                v.insert(v.end(), row.values.begin(), row.values.end());
                rows.push_back(std::move(v));
            }
            write_table_csv(
                c.artifact(prof == ProbeProfile::Singular ? "divergence_singular.csv" : "divergence_smooth.csv"),
                header, rows);
        }
    }

    const SquarePair sq = square_G_pair(wb.symbol, wb.jq, wb.tq, samples.front());
    write_grid_csv(sq.G.values, c.artifact("square_fn_G.csv"), "G");
    write_grid_csv(sq.Gtilde.values, c.artifact("square_fn_Gtilde.csv"), "Gtilde");
}

// ---------------------------------------------------------------- multiplier

void pairing_reports(Context& c, const Workbench& wb, const Modulator& phi, const MultiplierSymbol& m,
                     const GridFunction& f, const GridFunction& h, double p, const std::string& prefix) {
    const Tolerances& tol = c.cfg.tolerances;
    const double lt = pairing_time_domain(wb.symbol, wb.jq, wb.tq, phi, f, h);
    const double lf = pairing_fourier_domain(m, f, h);
    const double err = relative_error(lf, lt);
    c.add(make_report(prefix + "pairing-domains", lf, lt, err, tol.pairing, err <= tol.pairing,
                      {{"modulator", phi.to_json()}, {"lhs", "frequency domain"}, {"rhs", "time domain"}}));
    const double sup = m.sup();
    c.add(make_report(prefix + "multiplier-sup", phi.sup_norm, sup, sup - phi.sup_norm, tol.sup_slack,
                      sup <= phi.sup_norm + tol.sup_slack, {{"modulator", phi.to_json()}}));
    VerificationReport r = pairing_bound_check(wb.symbol, wb.jq, wb.tq, phi, f, h, p, tol.pairing_slack);
    r.identity = prefix + r.identity;
    c.add(std::move(r));
}

void multiplier_suite(Context& c) {
    const Tolerances& tol = c.cfg.tolerances;
    const MultiplierConfig& mc = c.cfg.multiplier;
    const Workbench& wb = c.wb();
    const std::vector<TestFunction> fam = c.family();
    try {
        const MultiplierSymbol one = symbol_from_phi(wb.symbol, wb.jq, wb.tq, Modulator::constant(1.0));
        double worst = 0.0;
        for (double v : one.m) worst = std::max(worst, std::abs(v - 1.0));
        c.add(make_report("multiplier-constant", 1.0, 1.0 + worst, worst, tol.multiplier_identity,
                          worst <= tol.multiplier_identity, {{"modulator", Modulator::constant(1.0).to_json()}}));
        const GridFunction f = fam.front().sample(c.grid);
        const GridFunction sf = apply_multiplier(one, f);
        const double dev = (sf - f).max_abs() / f.max_abs();
        c.add(make_report("multiplier-identity", f.max_abs(), sf.max_abs(), dev, tol.multiplier_identity,
                          dev <= tol.multiplier_identity, {{"label", fam.front().label}}));

        const Modulator phi = Modulator::separable([](double t) { return std::exp(-t); },
                                                   [](const Vec2& y) { return std::cos(norm(y)); }, 1.0,
                                                   "exp(-t) cos|y|");
        phi.validate(c.grid.dim(), 10000, derive_seed(c.cfg.seed, 500));
        const MultiplierSymbol m = symbol_from_phi(wb.symbol, wb.jq, wb.tq, phi);
        const auto [g1, g2] = random_zero_mass_pair(c.grid.dim(), c.grid.half_width(), derive_seed(c.cfg.seed, 501));
        pairing_reports(c, wb, phi, m, g1.sample(c.grid), g2.sample(c.grid), mc.p, "");
        write_dual_csv(c.grid, m.m, c.artifact("multiplier_separable.csv"), "m");
    } catch (const ModelError& e) {
        c.note(std::string("multiplier on the configured model: ") + e.what());
    }

    const Grid g2(2, mc.N, c.grid.half_width());
    const Workbench ax = make_workbench(LevyModel::axis_stable(2, mc.alpha), g2, c.cfg.grid_quadrature, c.cfg.time);
    c.result->params["marcinkiewicz"] = {{"grid", grid_json(g2)}, {"quadratures", quadrature_json(ax.jq, ax.tq)}};
    const Modulator phi = Modulator::marcinkiewicz_selector(mc.axis, mc.alpha);
    const MultiplierSymbol m = symbol_from_phi(ax.symbol, ax.jq, ax.tq, phi);
    const MultiplierSymbol cf = marcinkiewicz_closed_form(g2, mc.alpha, mc.axis);
    double worst = 0.0;
    std::size_t worst_k = 0;
    for (std::size_t k = 1; k < m.m.size(); ++k) {
        const double e = std::abs(m.m[k] - cf.m[k]);
        if (e > worst) {
            worst = e;
            worst_k = k;
        }
    }
    const Vec2 xw = g2.dual_point(worst_k);
    c.add(make_report("marcinkiewicz-symbol", cf.m[worst_k], m.m[worst_k], worst, tol.marcinkiewicz,
                      worst <= tol.marcinkiewicz,
                      {{"oracle", "|xi_j|^alpha / sum_i |xi_i|^alpha"},
                       {"error", "max abs difference over nonzero frequencies"},
                       {"worst_at", {xw[0], xw[1]}},
                       {"alpha", mc.alpha},
                       {"axis", mc.axis}}));
    const auto [f, h] = random_zero_mass_pair(2, c.grid.half_width(), derive_seed(c.cfg.seed, 502));
    pairing_reports(c, ax, phi, m, f.sample(g2), h.sample(g2), mc.p, "marcinkiewicz-");
    write_dual_csv(g2, m.m, c.artifact("multiplier_marcinkiewicz.csv"), "m");
    write_dual_csv(g2, cf.m, c.artifact("multiplier_marcinkiewicz_closed_form.csv"), "m");
}

// ---------------------------------------------------------------- mc

bool same_paths(const std::vector<PathSample>& a, const std::vector<PathSample>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].start != b[i].start || a[i].times != b[i].times || a[i].jumps != b[i].jumps) return false;
    return true;
}

void mc_suite(Context& c) {
    const Tolerances& tol = c.cfg.tolerances;
    const McConfig& m = c.cfg.mc;
    if (c.model.kind() == ModelKind::CompoundPoisson) {
        c.note("mc density: the compound-Poisson law has no density to compare against");
    } else {
        PathConfig pc;
        pc.eps = m.density_eps;
        pc.T = m.density_t;
        pc.n = m.density_n;
        pc.seed = derive_seed(c.cfg.seed, 600);
        const std::vector<Vec2> pos = simulate_positions(c.model, pc, m.density_t);
        c.add(empirical_density_check(pos, m.density_t, c.symbol()).verification());
    }

    const Workbench& wb = c.wb();
    const GridFunction f = unit_gaussian().sample(c.grid);
    PathConfig pc;
    pc.eps = m.eps;
    pc.T = m.T;
    pc.n = m.n;
    pc.seed = derive_seed(c.cfg.seed, 601);
    try {
        c.add(martingale_check(c.model, wb.symbol, wb.jq, f, pc, tol.mc).verification());
    } catch (const UnsupportedError& e) {
        c.note(std::string("martingale: ") + e.what());
    }
    try {
        PathConfig gc = pc;
        gc.n = m.gstar_n;
        gc.seed = derive_seed(c.cfg.seed, 602);
        c.add(gstar_integrated_check(c.model, wb.symbol, wb.jq, wb.tq, f, gc, m.z_stride, tol.mc).verification());
    } catch (const UnsupportedError& e) {
        c.note(std::string("gstar-integrated: ") + e.what());
    }

    {
        PathConfig rc = pc;
        rc.n = std::min<std::size_t>(pc.n, 2000);
        const std::vector<PathSample> a = simulate_paths(c.model, rc);
        const int threads = omp_get_max_threads();
        omp_set_num_threads(1);
        const std::vector<PathSample> b = simulate_paths(c.model, rc);
        omp_set_num_threads(threads);
        const bool same = same_paths(a, b);
        std::size_t jumps = 0;
        for (const PathSample& s : a) jumps += s.jumps.size();
        c.add(make_report("mc-reproducibility", double(a.size()), double(b.size()), same ? 0.0 : 1.0, 0.0, same,
                          {{"paths", rc.n}, {"jumps", jumps}, {"threads", {threads, 1}}}));
    }

    if (m.dump_paths) {
        const std::vector<PathSample> paths = simulate_paths(c.model, pc);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const Vec2 e = paths[i].terminal();
            rows.push_back({double(i), e[0], e[1], double(paths[i].jumps.size())});
        }
        write_table_csv(c.artifact("mc_paths.csv"), {"path", "x_T", "y_T", "jumps"}, rows);
    }
}

using SuiteFn = void (*)(Context&);

SuiteFn suite_fn(const std::string& name) {
    if (name == "symbol") return symbol_suite;
    if (name == "density") return density_suite;
    if (name == "hardy-stein") return hardy_stein_suite;
    if (name == "square-fn") return square_fn_suite;
    if (name == "multiplier") return multiplier_suite;
    if (name == "mc") return mc_suite;
    throw UsageError("unknown suite '" + name + "'");
}

void finish(SuiteResult& r) {
    r.passed = std::all_of(r.reports.begin(), r.reports.end(), [](const VerificationReport& v) { return v.passed; });
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

SuiteResult run_one(const RunConfig& cfg, const std::string& name) {
    const auto start = clk::now();
    SuiteFn fn = suite_fn(name);
    SuiteResult r;
    r.name = name;
    Context c(cfg);
    c.result = &r;
    r.params["grid"] = grid_json(c.grid);
    fn(c);
    finish(r);
    r.wall_clock_s = std::chrono::duration<double>(clk::now() - start).count();
    json j = r.to_json(cfg);
    write_json(j, fs::path(cfg.output_dir) / (name + ".json"));
    return r;
}

}  // namespace

json SuiteResult::to_json(const RunConfig& cfg) const {
    json reps = json::array();
    for (const VerificationReport& r : reports) reps.push_back(r.to_json());
    json j;
    j["suite"] = name;
    j["passed"] = passed;
    j["reports"] = std::move(reps);
    j["notes"] = notes;
    j["params"] = params;
    j["artifacts"] = artifacts;
    j["config"] = config_json(cfg);
    j["metadata"] = {{"wall_clock_s", wall_clock_s}, {"finished_utc", utc_now()}};
    return j;
}

std::vector<std::string> export_field(const RunConfig& cfg, const ExportRequest& req) {
    static const std::vector<std::string> fields{"f", "density", "symbol", "semigroup", "G", "Gtilde", "Gstar", "maximal"};
    if (std::find(fields.begin(), fields.end(), req.field) == fields.end())
        throw UsageError("unknown field '" + req.field + "'");
    if (req.format != "csv" && req.format != "raw") throw UsageError("unknown format '" + req.format + "'");
    if (req.field == "symbol" && req.format == "raw") throw UsageError("the symbol is exported as csv only");

    SuiteResult scratch;
    Context c(cfg);
    c.result = &scratch;
    const fs::path stem = c.out / req.field;
    if (req.field == "symbol") {
        write_dual_csv(c.grid, c.symbol().psi, stem.string() + ".csv", "psi");
        return {stem.string() + ".csv"};
    }

    auto member = [&]() {
        const std::vector<TestFunction> fam = c.family();
        for (const TestFunction& tf : fam)
            if (req.member.empty() || tf.label == req.member) return c.samples(c.grid, {tf}).front();
        throw UsageError("no family member labelled '" + req.member + "'");
    };
    GridFunction out(c.grid);
    if (req.field == "f")
        out = member();
    else if (req.field == "density")
        out = transition_density(c.symbol(), req.t);
    else if (req.field == "semigroup")
        out = semigroup_apply(c.symbol(), req.t, member());
    else if (req.field == "maximal") {
        const Workbench& wb = c.wb();
        out = maximal_function(wb.symbol, member(), log_spaced_times(1e-4, wb.tq.t_max, 40));
    } else {
        const Workbench& wb = c.wb();
        const GridFunction f = member();
        if (req.field == "G")
            out = square_G(wb.symbol, wb.jq, wb.tq, f).values;
        else if (req.field == "Gtilde")
            out = square_Gtilde(wb.symbol, wb.jq, wb.tq, f).values;
        else
            out = square_Gstar(wb.symbol, wb.jq, wb.tq, f).values;
    }
    if (req.format == "csv") {
        write_grid_csv(out, stem.string() + ".csv", req.field);
        return {stem.string() + ".csv"};
    }
    write_grid_raw(out, stem, req.field);
    return {stem.string() + ".bin", stem.string() + ".json"};
}

json strip_metadata(json j) {
    if (j.is_object()) {
        j.erase("metadata");
        for (auto& [k, v] : j.items()) v = strip_metadata(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_metadata(v);
    }
    return j;
}

SuiteResult run_suite(const RunConfig& cfg, const std::string& name) {
    if (name != "all") return run_one(cfg, name);
    const auto start = clk::now();
    SuiteResult all;
    all.name = "all";
    for (const std::string& s : known_suites()) {
        if (s == "all") continue;
        SuiteResult r = run_one(cfg, s);
        for (VerificationReport& v : r.reports) {
            v.details["suite"] = s;
            all.reports.push_back(std::move(v));
        }
        for (const std::string& n : r.notes) all.notes.push_back(n);
        all.params[s] = r.params;
        for (const std::string& a : r.artifacts) all.artifacts.push_back(a);
        all.artifacts.push_back(s + ".json");
    }
    finish(all);
    all.wall_clock_s = std::chrono::duration<double>(clk::now() - start).count();
    write_json(all.to_json(cfg), fs::path(cfg.output_dir) / "all.json");
    return all;
}

}  // namespace levy
