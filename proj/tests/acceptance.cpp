// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <omp.h>

#include "levy/divergence.hpp"
#include "levy/family.hpp"
#include "levy/fft.hpp"
#include "levy/hardy_stein.hpp"
#include "levy/jump_quadrature.hpp"
#include "levy/mc.hpp"
#include "levy/multiplier.hpp"
#include "levy/rng.hpp"
#include "levy/spectral.hpp"
#include "levy/square_fn.hpp"
#include "levy/workbench.hpp"

using namespace levy;
using std::numbers::pi;
using clk = std::chrono::steady_clock;

namespace {

constexpr double L = 16.0;

struct Outcome {
    bool passed = true;
    std::string summary;

    void require(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::require(bool ok, const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    passed = passed && ok;
    if (!summary.empty()) summary += "; ";
    summary += buf;
    if (!ok) summary += " [x]";
}

double seconds_since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

std::vector<GridFunction> sample_all(const std::vector<TestFunction>& fam, const Grid& g) {
    std::vector<GridFunction> s;
    for (const auto& tf : fam) s.push_back(tf.sample(g));
    return s;
}

double centered_sq_norm(const GridFunction& f) {
    const double area = std::pow(2.0 * f.grid().half_width(), f.grid().dim());
    const double mean = f.integral() / area;
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += (f[i] - mean) * (f[i] - mean);
    return s * f.grid().cell_volume();
}

double slope(const std::vector<double>& n, const std::vector<double>& e) {
    double mx = 0, my = 0, sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        mx += std::log(n[i]) / n.size();
        my += std::log(e[i]) / n.size();
    }
    for (std::size_t i = 0; i < n.size(); ++i) {
        sxy += (std::log(n[i]) - mx) * (std::log(e[i]) - my);
        sxx += (std::log(n[i]) - mx) * (std::log(n[i]) - mx);
    }
    return -sxy / sxx;
}

const Workbench& main_bench() {
    static const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, 1.5), Grid(1, 512, L));
    return wb;
}

Outcome criterion1() {
    Outcome o;
    for (double alpha : {1.0, 1.5}) {
        std::vector<std::vector<double>> errs(3);
        const std::vector<int> Ns{256, 512, 1024};
        for (int N : Ns) {
            const Grid g(1, N, L);
            const GridFunction f = unit_gaussian().sample(g);
            const auto t0 = clk::now();
            const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, alpha), g);
            const double setup = seconds_since(t0);
            int pi_ = 0;
            for (double p : {1.5, 2.0, 3.0}) {
                const auto t1 = clk::now();
                const HardySteinReport r = hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, f, PExponent(p));
                const double secs = setup + seconds_since(t1);
                errs[pi_++].push_back(r.rel_error);
                if (N == 512)
                    o.require(r.rel_error <= 2e-2 && secs <= 60.0, "a=%.1f p=%.1f err=%.2e %.1fs", alpha, p, r.rel_error, secs);
            }
        }
        int pi_ = 0;
        for (double p : {1.5, 2.0, 3.0}) {
            const double s = slope({256, 512, 1024}, errs[pi_++]);
            o.require(s >= 0.8, "a=%.1f p=%.1f slope=%.2f", alpha, p, s);
        }
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto run = [&](const Workbench& wb, const char* tag) {
        double lo = 1e9, hi = -1e9;
        for (const GridFunction& f : sample_all(standard_family(wb.grid().dim(), L), wb.grid())) {
            const SquarePair sq = square_G_pair(wb.symbol, wb.jq, wb.tq, f);
            const double n2 = centered_sq_norm(f);
            const double rg = std::pow(sq.G.values.norm_p(2.0), 2) / n2;
            const double rt = 2.0 * std::pow(sq.Gtilde.values.norm_p(2.0), 2) / n2;
            lo = std::min({lo, rg, rt});
            hi = std::max({hi, rg, rt});
        }
        o.require(lo >= 0.99 && hi <= 1.01, "%s ratios in [%.5f, %.5f]", tag, lo, hi);
    };
    run(main_bench(), "d=1");
    run(make_workbench(LevyModel::isotropic_stable(2, 1.0), Grid(2, 64, L)), "d=2");
    return o;
}

Outcome criterion3() {
    Outcome o;
    const double h = 2.0 * L / 512;
    for (int d : {1, 2})
        for (double alpha : {0.5, 1.0, 1.5}) {
            const LevyModel m = LevyModel::isotropic_stable(d, alpha);
            const JumpQuadrature q = build_jump_quadrature(m, h / 2, 4 * L, 96, 32);
            double worst = 0.0;
            for (int i = 0; i < 25; ++i) {
                const double r = 0.5 * std::pow(16.0, i / 24.0);
                for (double th : d == 1 ? std::vector<double>{0.0} : std::vector<double>{0.0, 0.37, 0.785}) {
                    const double psi = symbol_quadrature(q, {r * std::cos(th), r * std::sin(th)});
                    worst = std::max(worst, std::abs(psi / std::pow(r, alpha) - 1.0));
                }
            }
            o.require(worst <= 1e-3, "d=%d a=%.1f %.1e", d, alpha, worst);
        }
    return o;
}

// Cauchy density summed over the periodic images of [-L, L)^d.
double cauchy_torus(int d, double t, const Vec2& x) {
    if (d == 1) {
        const double a = pi / L;
        return std::sinh(a * t) / (2.0 * L * (std::cosh(a * t) - std::cos(a * x[0])));
    }
    const int K = 40;
    double s = 0.0;
    for (int i = -K; i <= K; ++i)
        for (int j = -K; j <= K; ++j) {
            const double a = x[0] + 2 * L * i, b = x[1] + 2 * L * j;
            s += 1.0 / std::pow(t * t + a * a + b * b, 1.5);
        }
    const double S = (2 * K + 1) * L;
    return t / (2.0 * pi) * (s + 4.0 * std::sqrt(2.0) / S / (4.0 * L * L));
}

Outcome criterion4() {
    Outcome o;
    for (int d : {1, 2}) {
        const Grid g(d, 512, L);
        const SymbolGrid s = build_symbol_grid(LevyModel::isotropic_stable(d, 1.0), g);
        const GridFunction p = transition_density(s, 1.0);
        double worst = 0.0, worst_free = 0.0;
        const int stride = d == 1 ? 1 : 8;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Vec2 x = g.point(i);
            if (norm(x) > L / 2) continue;
            if (d == 2 && (i % 512 % stride || i / 512 % stride)) continue;
            worst = std::max(worst, std::abs(p[i] / cauchy_torus(d, 1.0, x) - 1.0));
            worst_free = std::max(worst_free, std::abs(p[i] / cauchy_closed_form(d, 1.0, x) - 1.0));
        }
        const double mass = p.integral();
        // p_1 * p_1 against p_2, by periodic convolution on the index lattice
        const GridFunction q = p;
        const GridFunction p2 = transition_density(s, 2.0);
        double ck = 0.0;
        const int N = g.n();
        if (d == 1) {
            for (int i = 0; i < N; ++i) {
                double c = 0.0;
                for (int j = 0; j < N; ++j) c += q[j] * q[((i - j + N / 2) % N + N) % N];
                ck += std::abs(c * g.h() - p2[i]) * g.h();
            }
        } else {
            const Fft fft(g);
            auto Q = fft.spectrum(q.values());
            for (auto& v : Q) v *= v;
            const std::vector<double> c = fft.real_inverse(Q);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    const double cv = c[g.index((i + N / 2) % N, (j + N / 2) % N)] * g.cell_volume();
                    ck += std::abs(cv - p2[g.index(i, j)]) * g.cell_volume();
                }
        }
        o.require(worst <= 1e-3 && std::abs(mass - 1.0) <= 1e-6 && ck <= 1e-3,
                  "d=%d sup rel %.1e (free-space %.1e), mass-1 %.1e, CK L1 %.1e", d, worst, worst_free, mass - 1.0, ck);
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (double p : {1.1, 1.5, 1.9}) {
        const RegularizedBoundCheck r = regularized_bound_check(PExponent(p), 100000, derive_seed(5, 1), 1e-12);
        const TaylorBoundRatios a = taylor_bound_ratios(PExponent(p), 100000, derive_seed(5, 2));
        const TaylorBoundRatios b = taylor_bound_ratios(PExponent(p), 100000, derive_seed(5, 3));
        const double drift = std::max(std::abs(a.min_ratio / b.min_ratio - 1), std::abs(a.max_ratio / b.max_ratio - 1));
        const bool ok = r.passed && std::isfinite(a.max_ratio) && a.min_ratio > 0 && std::isfinite(b.max_ratio) &&
                        b.min_ratio > 0 && drift <= 0.05;
        o.require(ok, "p=%.1f excess %.1e ratios [%.4f, %.4f] drift %.1e", p, r.max_excess, a.min_ratio, a.max_ratio, drift);
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    const Workbench& wb = main_bench();
    const auto fam = sample_all(standard_family(1, L), wb.grid());
    const std::vector<double> times = log_spaced_times(1e-4, wb.tq.t_max, 40);
    std::vector<GridFunction> star;
    for (const auto& f : fam) star.push_back(maximal_function(wb.symbol, f, times));
    for (double p : {1.5, 2.0, 3.0}) {
        double worst = 0.0;
        for (std::size_t i = 0; i < fam.size(); ++i)
            worst = std::max(worst, star[i].norm_p(p) / (p / (p - 1) * fam[i].norm_p(p)));
        o.require(worst <= 1.01, "p=%.1f max ratio %.3f", p, worst);
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    const Workbench& wb = main_bench();
    const MultiplierSymbol one = symbol_from_phi(wb.symbol, wb.jq, wb.tq, Modulator::constant(1.0));
    double dm = 0.0;
    for (double v : one.m) dm = std::max(dm, std::abs(v - 1.0));
    double di = 0.0;
    for (const auto& f : sample_all(standard_family(1, L), wb.grid()))
        di = std::max(di, (apply_multiplier(one, f) - f).max_abs() / f.max_abs());
    o.require(dm <= 1e-3 && di <= 1e-3, "phi=1: |m-1| %.1e, |Sf-f| %.1e", dm, di);

    auto pairing = [&](const Workbench& w, const Modulator& phi, const MultiplierSymbol& m, std::uint64_t seed, const char* tag) {
        const auto [f, h] = random_zero_mass_pair(w.grid().dim(), L, seed);
        const GridFunction F = f.sample(w.grid()), H = h.sample(w.grid());
        const double lt = pairing_time_domain(w.symbol, w.jq, w.tq, phi, F, H);
        const double lf = pairing_fourier_domain(m, F, H);
        const VerificationReport b = pairing_bound_check(w.symbol, w.jq, w.tq, phi, F, H, 1.5, 1e-8);
        o.require(std::abs(lt - lf) <= 1e-2 * std::abs(lf), "%s Lambda rel %.1e", tag, std::abs(lt - lf) / std::abs(lf));
        o.require(m.sup() <= phi.sup_norm + 1e-8, "%s sup m %.6f", tag, m.sup());
        o.require(b.passed, "%s bound %.3g <= %.3g", tag, b.lhs, b.rhs);
    };
    const Modulator sep = Modulator::separable([](double t) { return std::exp(-t); },
                                               [](const Vec2& y) { return std::cos(norm(y)); }, 1.0, "sep");
    pairing(wb, sep, symbol_from_phi(wb.symbol, wb.jq, wb.tq, sep), derive_seed(7, 1), "separable");

    const Grid g2(2, 128, L);
    const Workbench ax = make_workbench(LevyModel::axis_stable(2, 1.0), g2);
    const Modulator sel = Modulator::marcinkiewicz_selector(1, 1.0);
    const MultiplierSymbol m = symbol_from_phi(ax.symbol, ax.jq, ax.tq, sel);
    double worst = 0.0;
    for (std::size_t k = 1; k < m.m.size(); ++k) {
        const Vec2 xi = g2.dual_point(k);
        worst = std::max(worst, std::abs(m.m[k] - std::abs(xi[0]) / (std::abs(xi[0]) + std::abs(xi[1]))));
    }
    o.require(worst <= 1e-2, "Marcinkiewicz vs closed form %.1e", worst);
    pairing(ax, sel, m, derive_seed(7, 2), "Marcinkiewicz");
    return o;
}

Outcome criterion8() {
    Outcome o;
    const Workbench& wb = main_bench();
    int ok = 0;
    double tightest = 1e9;
    for (int i = 0; i < 20; ++i) {
        const auto [f, h] = random_zero_mass_pair(1, L, derive_seed(8, i));
        const GridFunction F = f.sample(wb.grid()), H = h.sample(wb.grid());
        const SquareFunctionResult gt = square_Gtilde(wb.symbol, wb.jq, wb.tq, F);
        const SquareFunctionResult g = square_G(wb.symbol, wb.jq, wb.tq, H);
        const double bound = 2.0 * gt.values.inner(g.values);
        const double lhs = std::abs(F.inner(H));
        ok += lhs <= bound + 1e-8;
        tightest = std::min(tightest, bound / lhs);
    }
    o.require(ok == 20, "%d/20 pairs, smallest bound/|<f,h>| %.3f", ok, tightest);
    return o;
}

Outcome criterion9() {
    Outcome o;
    {
        const Grid g(1, 512, L);
        const LevyModel m = LevyModel::isotropic_stable(1, 1.0);
        PathConfig cfg;
        cfg.eps = 1e-3;
        cfg.n = 100000;
        cfg.seed = derive_seed(9, 1);
        const DensityCheck d = empirical_density_check(simulate_positions(m, cfg, 1.0), 1.0, build_symbol_grid(m, g));
        o.require(d.passed(), "density L1 %.4f budget %.4f", d.l1, d.budget);
    }
    const Workbench& wb = main_bench();
    const GridFunction f = unit_gaussian().sample(wb.grid());
    PathConfig cfg;
    cfg.eps = 0.05;
    cfg.n = 10000;
    cfg.seed = derive_seed(9, 2);
    const MartingaleCheck mc = martingale_check(wb.model(), wb.symbol, wb.jq, f, cfg, 0.05);
    o.require(mc.passed(), "Ito E[M^2] %.5f E<M> %.5f", mc.m2.mean, mc.predictable.mean);
    PathConfig gc = cfg;
    gc.n = 1000;
    gc.seed = derive_seed(9, 3);
    const GstarIntegratedCheck gs = gstar_integrated_check(wb.model(), wb.symbol, wb.jq, wb.tq, f, gc, 8, 0.05);
    o.require(gs.passed(), "G* integrated %.5f vs %.5f (se %.1e)", gs.lhs, gs.rhs, gs.rhs_stderr);

    PathConfig rc = cfg;
    rc.n = 2000;
    const auto a = simulate_paths(wb.model(), rc);
    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto b = simulate_paths(wb.model(), rc);
    omp_set_num_threads(threads);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].times == b[i].times && a[i].jumps == b[i].jumps;
    const MartingaleCheck mc2 = martingale_check(wb.model(), wb.symbol, wb.jq, f, rc, 0.05);
    const MartingaleCheck mc3 = martingale_check(wb.model(), wb.symbol, wb.jq, f, rc, 0.05);
    same = same && mc2.to_json().dump() == mc3.to_json().dump();
    o.require(same, "same-seed paths and report bit-identical");
    return o;
}

Outcome criterion10() {
    Outcome o;
    const Grid g(2, 256, L);
    const std::vector<double> s{1e-1, 1e-2, 1e-3, 1e-4};
    const DivergenceProbe sing = divergence_probe(g, s, ProbeProfile::Singular, ProbeRoute::Radial);
    const DivergenceProbe smooth = divergence_probe(g, s, ProbeProfile::Smooth, ProbeRoute::Radial);
    bool inc = true;
    double worst_ratio = 1e9;
    for (const auto& d : sing.increments()) {
        for (double v : d) inc = inc && v > 0.0;
        worst_ratio = std::min(worst_ratio, d.back() / d[d.size() - 2]);
    }
    o.require(inc && worst_ratio >= 0.5, "singular: increasing, last/previous increment >= %.3f", worst_ratio);
    double worst_sat = 0.0;
    for (const auto& d : smooth.increments()) worst_sat = std::max(worst_sat, d.back() / d.front());
    o.require(worst_sat <= 0.05, "smooth: last/first increment <= %.4f", worst_sat);
    return o;
}

Outcome criterion11() {
    Outcome o;
    const Workbench& wb = main_bench();
    const Workbench fine = make_workbench(LevyModel::isotropic_stable(1, 1.5), Grid(1, 1024, L));
    const auto fam = standard_family(1, L);
    const auto s = sample_all(fam, wb.grid()), sf = sample_all(fam, fine.grid());
    auto ratios = [](const Workbench& w, const std::vector<GridFunction>& fs, double p) {
        std::vector<double> r;
        for (const auto& f : fs) {
            const double area = 2.0 * L;
            const double mean = f.integral() / area;
            GridFunction c = f;
            for (double& v : c.values()) v -= mean;
            r.push_back(square_Gtilde(w.symbol, w.jq, w.tq, f).values.norm_p(p) / c.norm_p(p));
        }
        return r;
    };
    for (double p : {1.5, 3.0}) {
        const auto a = ratios(wb, s, p), b = ratios(fine, sf, p);
        const double lo = *std::min_element(a.begin(), a.end()), hi = *std::max_element(a.begin(), a.end());
        const double lo2 = *std::min_element(b.begin(), b.end()), hi2 = *std::max_element(b.begin(), b.end());
        const double drift = std::max(std::abs(lo2 / lo - 1), std::abs(hi2 / hi - 1));
        o.require(lo > 0 && drift <= 0.05, "p=%.1f [%.4f, %.4f] drift %.1e", p, lo, hi, drift);
    }
    const auto two = ratios(wb, s, 2.0);
    double dev = 0.0;
    for (double r : two) dev = std::max(dev, std::abs(r - std::sqrt(0.5)));
    o.require(dev <= 1e-2, "p=2 max |ratio - 1/sqrt2| %.1e", dev);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 Hardy-Stein identity", criterion1},    {"2 L2 isometry", criterion2},
        {"3 symbol accuracy", criterion3},         {"4 density accuracy", criterion4},
        {"5 lemma checks", criterion5},            {"6 maximal inequality", criterion6},
        {"7 multiplier suite", criterion7},        {"8 duality", criterion8},
        {"9 Monte Carlo", criterion9},             {"10 divergence probe", criterion10},
        {"11 norm equivalence", criterion11},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = clk::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.passed = false;
            o.summary = std::string("exception: ") + e.what();
        }
        failed += !o.passed;
        std::printf("%s criterion %s (%.1fs): %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
                    o.summary.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
