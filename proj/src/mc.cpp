#include "levy/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "levy/errors.hpp"
#include "levy/fft.hpp"
#include "levy/increments.hpp"
#include "levy/reduce.hpp"
#include "levy/rng.hpp"
#include "levy/square_fn.hpp"

namespace levy {

namespace {

constexpr double kMaxExpectedJumps = 1e7;

LevyModel truncated_atoms(const LevyModel& model, double eps) {
    std::vector<Atom> kept;
    for (const Atom& a : model.atoms())
        if (norm(a.location) > eps) kept.push_back(a);
    if (kept.empty()) throw std::invalid_argument("every atom lies inside the jump cutoff");
    return LevyModel::compound_poisson(model.dim(), kept);
}

class JumpSampler {
public:
    JumpSampler(const LevyModel& m, double eps) : m_(m), eps_(eps) {
        if (!(eps > 0.0)) throw std::invalid_argument("jump cutoff eps must be positive");
        switch (m.kind()) {
            case ModelKind::CompoundPoisson: {
                double c = 0.0;
                for (const Atom& a : m.atoms())
                    if (norm(a.location) > eps) {
                        c += a.mass;
                        cum_.push_back(c);
                        atoms_.push_back(a.location);
                    }
                rate_ = c;
                break;
            }
            case ModelKind::TruncatedStable:
                rate_ = eps < m.radius() ? m.shell_mass(eps, m.radius()) : 0.0;
                break;
            default:
                // Untempered stable tail; tempering is applied by thinning.
                rate_ = m.ray_count() * m.density_constant() * std::pow(eps, -m.alpha()) / m.alpha();
        }
    }

    double proposal_rate() const { return rate_; }

    bool draw(Rng& rng, Vec2& y) const {
        if (m_.kind() == ModelKind::CompoundPoisson) {
            const double u = rng.uniform() * cum_.back();
            const std::size_t i = std::min<std::size_t>(std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin(),
                                                        atoms_.size() - 1);
            y = atoms_[i];
            return true;
        }
        const double a = m_.alpha();
        double r;
        if (m_.kind() == ModelKind::TruncatedStable) {
            const double lo = std::pow(eps_, -a), hi = std::pow(m_.radius(), -a);
            r = std::pow(lo - rng.uniform() * (lo - hi), -1.0 / a);
        } else {
            r = eps_ * std::pow(rng.uniform(), -1.0 / a);
        }
        y = direction(rng);
        y[0] *= r;
        y[1] *= r;
        if (m_.kind() == ModelKind::TemperedStable) return rng.uniform() < std::exp(-m_.lambda() * r);
        return true;
    }

private:
    Vec2 direction(Rng& rng) const {
        if (m_.kind() == ModelKind::AxisStable) {
            const std::size_t k = rng.index(2 * std::size_t(m_.dim()));
            Vec2 e{0.0, 0.0};
            e[k / 2] = k % 2 == 0 ? 1.0 : -1.0;
            return e;
        }
        if (m_.dim() == 1) return {rng.uniform() < 0.5 ? -1.0 : 1.0, 0.0};
        const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
        return {std::cos(th), std::sin(th)};
    }

    const LevyModel& m_;
    double eps_;
    double rate_ = 0.0;
    std::vector<double> cum_;
    std::vector<Vec2> atoms_;
};

void guard(const JumpSampler& s, const PathConfig& cfg) {
    if (!(cfg.T > 0.0)) throw std::invalid_argument("horizon T must be positive");
    if (cfg.n == 0) throw std::invalid_argument("path count must be positive");
    if (s.proposal_rate() * cfg.T > kMaxExpectedJumps) {
        std::ostringstream msg;
        msg << "expected " << s.proposal_rate() * cfg.T << " jumps per path exceeds " << kMaxExpectedJumps
            << "; decrease T or increase eps";
        throw CostGuardError(msg.str());
    }
}

template <class Visit>
void walk(const JumpSampler& s, const PathConfig& cfg, std::size_t index, Visit&& visit) {
    Rng rng(derive_seed(cfg.seed, index));
    const double rate = s.proposal_rate();
    if (rate <= 0.0) return;
    double t = 0.0;
    Vec2 y;
    while (true) {
        t += rng.exponential() / rate;
        if (t > cfg.T) break;
        if (s.draw(rng, y)) visit(t, y);
    }
}

// Band-limited evaluation of P_tau f at arbitrary x (d = 1): the trigonometric
// interpolant of the grid values, evolved spectrally.
class BandLimited {
public:
    BandLimited(const GridFunction& f, const std::vector<double>& psi) : L_(f.grid().half_width()), psi_(psi) {
        const SpectrumFunction F = forward_transform(f);
        c_ = F.values;
        half_ = f.grid().n() / 2;
        a_.resize(std::size_t(half_) + 1);
    }

    void set_time(double tau) {
        for (int k = 0; k <= half_; ++k) a_[k] = c_[std::size_t(k)] * std::exp(-tau * psi_[std::size_t(k)]);
    }

    double operator()(double x) const {
        const cplx z = std::polar(1.0, -std::numbers::pi * x / L_);
        cplx zk = z;
        double s = a_[0].real();
        for (int k = 1; k < half_; ++k) {
            s += 2.0 * (a_[k] * zk).real();
            zk *= z;
        }
        s += (a_[half_] * zk).real();
        return s / (2.0 * L_);
    }

private:
    double L_;
    const std::vector<double>& psi_;
    std::vector<cplx> c_;
    std::vector<cplx> a_;
    int half_;
};

// Gamma(P_tau f) on midpoint tau cells of [0, T], read at paths by cubic interpolation.
class VariationTable {
public:
    VariationTable(const SymbolGrid& symbol, const GridJumpQuadrature& jq, const GridFunction& f, double T, int K)
        : grid_(f.grid()), T_(T), K_(K) {
        std::vector<double> taus(K);
        for (int i = 0; i < K; ++i) taus[i] = (i + 0.5) * T / K;
        gamma_.resize(K);
        IncrementEngine engine(symbol, jq);
        kernels::Terms terms;
        terms.g = true;
        engine.evaluate(taus, terms, f, nullptr,
                        [&](std::size_t j, double, const kernels::Accumulators& acc, const auto&) { gamma_[j] = acc.g; });
    }

    double at(int i, double x) const {
        const int N = grid_.n();
        const double u = (x + grid_.half_width()) / grid_.h();
        const double fl = std::floor(u);
        const double s = u - fl;
        const long i0 = long(fl);
        auto val = [&](long j) { return gamma_[i][std::size_t(((j % N) + N) % N)]; };
        const double p0 = val(i0 - 1), p1 = val(i0), p2 = val(i0 + 1), p3 = val(i0 + 2);
        return p1 + 0.5 * s * (p2 - p0 + s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + s * (3.0 * (p1 - p2) + p3 - p0)));
    }

    // int_0^T Gamma(P_{T-s} f)(X_s) ds along the path.
    double along(const PathSample& path) const {
        const double ds = T_ / K_;
        double total = 0.0, x = path.start[0];
        std::size_t next = 0;
        for (int c = 0; c < K_; ++c) {
            const int i = K_ - 1 - c;
            double s = c * ds;
            const double end = (c + 1) * ds;
            while (next < path.times.size() && path.times[next] <= end) {
                total += (path.times[next] - s) * at(i, x);
                s = path.times[next];
                x += path.jumps[next][0];
                ++next;
            }
            total += (end - s) * at(i, x);
        }
        return total;
    }

private:
    Grid grid_;
    double T_;
    int K_;
    std::vector<std::vector<double>> gamma_;
};

constexpr int kVariationCells = 128;

void require_1d(const Grid& g, const char* what) {
    if (g.dim() != 1) throw UnsupportedError(std::string(what) + " is implemented for d = 1");
}

}  // namespace

Vec2 PathSample::position(double t) const {
    Vec2 x = start;
    for (std::size_t i = 0; i < times.size() && times[i] <= t; ++i) {
        x[0] += jumps[i][0];
        x[1] += jumps[i][1];
    }
    return x;
}

Vec2 PathSample::terminal() const { return position(std::numeric_limits<double>::infinity()); }

double jump_rate(const LevyModel& model, double eps) {
    if (model.kind() == ModelKind::CompoundPoisson) {
        double s = 0.0;
        for (const Atom& a : model.atoms())
            if (norm(a.location) > eps) s += a.mass;
        return s;
    }
    return model.tail_mass(eps);
}

PathSample simulate_path(const LevyModel& model, const PathConfig& cfg, std::size_t index) {
    const JumpSampler s(model, cfg.eps);
    guard(s, cfg);
    PathSample p{cfg.z, {}, {}};
    walk(s, cfg, index, [&](double t, const Vec2& y) {
        p.times.push_back(t);
        p.jumps.push_back(y);
    });
    return p;
}

std::vector<PathSample> simulate_paths(const LevyModel& model, const PathConfig& cfg) {
    const JumpSampler s(model, cfg.eps);
    guard(s, cfg);
    std::vector<PathSample> out(cfg.n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < cfg.n; ++i) {
        PathSample& p = out[i];
        p.start = cfg.z;
        walk(s, cfg, i, [&](double t, const Vec2& y) {
            p.times.push_back(t);
            p.jumps.push_back(y);
        });
    }
    return out;
}

std::vector<Vec2> simulate_positions(const LevyModel& model, const PathConfig& cfg, double t) {
    if (!(t > 0.0 && t <= cfg.T)) throw std::invalid_argument("observation time must lie in (0, T]");
    const JumpSampler s(model, cfg.eps);
    guard(s, cfg);
    PathConfig c = cfg;
    c.T = t;
    std::vector<Vec2> out(cfg.n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < cfg.n; ++i) {
        Vec2 x = cfg.z;
        walk(s, c, i, [&](double, const Vec2& y) {
            x[0] += y[0];
            x[1] += y[1];
        });
        out[i] = x;
    }
    return out;
}

json DensityCheck::to_json() const {
    return {{"t", t},
            {"n", n},
            {"bin_width", bin_width},
            {"bins_per_axis", bins_per_axis},
            {"l1", l1},
            {"budget", budget},
            {"exact_mass", exact_mass},
            {"max_empirical_density", max_empirical_density},
            {"passed", passed()}};
}

VerificationReport DensityCheck::verification() const {
    VerificationReport r;
    r.identity = "mc-density";
    r.lhs = l1;
    r.rhs = budget;
    r.rel_error = budget > 0.0 ? l1 / budget : 0.0;
    r.tolerance = 1.0;
    r.passed = passed();
    r.details = to_json();
    return r;
}

DensityCheck empirical_density_check(std::span<const Vec2> positions, double t, const SymbolGrid& symbol,
                                     int bin_cells) {
    const Grid& g = symbol.grid;
    const int N = g.n(), d = g.dim();
    if (bin_cells < 1 || N % bin_cells != 0) throw std::invalid_argument("bin width must be a divisor of N cells");
    if (positions.empty()) throw std::invalid_argument("no samples");
    const int B = N / bin_cells;
    const double L = g.half_width(), bw = bin_cells * g.h();
    DensityCheck c;
    c.t = t;
    c.n = positions.size();
    c.bin_width = bw;
    c.bins_per_axis = B;

    // J[k][b] = int over bin b of exp(-i xi_k x) dx
    std::vector<cplx> J(std::size_t(N) * B);
    for (int k = 0; k < N; ++k) {
        const double xi = g.frequency(k);
        for (int b = 0; b < B; ++b) {
            const double a0 = -L + b * bw, a1 = a0 + bw;
            J[std::size_t(k) * B + b] = xi == 0.0 ? cplx(bw, 0.0)
                                                  : (std::polar(1.0, -xi * a0) - std::polar(1.0, -xi * a1)) / cplx(0.0, xi);
        }
    }
    const std::size_t nb = d == 1 ? std::size_t(B) : std::size_t(B) * B;
    std::vector<double> exact(nb, 0.0);
    const double norm_c = 1.0 / std::pow(2.0 * L, d);
    if (d == 1) {
        for (int b = 0; b < B; ++b) {
            cplx s = 0.0;
            for (int k = 0; k < N; ++k) s += std::exp(-t * symbol.psi[k]) * J[std::size_t(k) * B + b];
            exact[b] = s.real() * norm_c;
        }
    } else {
        std::vector<cplx> A(std::size_t(N) * B, cplx(0.0, 0.0));
        for (int k0 = 0; k0 < N; ++k0)
            for (int k1 = 0; k1 < N; ++k1) {
                const double e = std::exp(-t * symbol.psi[g.index(k0, k1)]);
                if (e == 0.0) continue;
                for (int b1 = 0; b1 < B; ++b1) A[std::size_t(k0) * B + b1] += e * J[std::size_t(k1) * B + b1];
            }
        for (int b0 = 0; b0 < B; ++b0)
            for (int b1 = 0; b1 < B; ++b1) {
                cplx s = 0.0;
                for (int k0 = 0; k0 < N; ++k0) s += J[std::size_t(k0) * B + b0] * A[std::size_t(k0) * B + b1];
                exact[std::size_t(b0) * B + b1] = s.real() * norm_c;
            }
    }

    std::vector<double> counts(nb, 0.0);
    auto bin_of = [&](double x) {
        double u = std::fmod(x + L, 2.0 * L);
        if (u < 0.0) u += 2.0 * L;
        return std::min(B - 1, int(u / bw));
    };
    for (const Vec2& x : positions) {
        const std::size_t b = d == 1 ? std::size_t(bin_of(x[0])) : std::size_t(bin_of(x[0])) * B + bin_of(x[1]);
        counts[b] += 1.0;
    }
    const double n = double(positions.size());
    std::vector<double> dev(nb), bud(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const double emp = counts[b] / n;
        dev[b] = std::abs(emp - exact[b]);
        bud[b] = 3.0 * std::sqrt(std::max(exact[b], 0.0) / n);
        c.max_empirical_density = std::max(c.max_empirical_density, emp / std::pow(bw, d));
    }
    c.l1 = pairwise_sum(dev);
    c.budget = pairwise_sum(bud);
    c.exact_mass = pairwise_sum(exact);
    return c;
}

Moments sample_moments(std::span<const double> x) {
    Moments m;
    if (x.empty()) return m;
    const double n = double(x.size());
    m.mean = pairwise_sum(x) / n;
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - m.mean) * (x[i] - m.mean);
    m.se = x.size() > 1 ? std::sqrt(pairwise_sum(sq) / (n - 1.0) / n) : 0.0;
    return m;
}

std::vector<MartingaleSample> martingale_samples(const LevyModel& model, const SymbolGrid& symbol,
                                                 const GridJumpQuadrature& jq, const GridFunction& f,
                                                 std::span<const PathSample> paths, double T) {
    const Grid& g = symbol.grid;
    require_1d(g, "the martingale check");
    if (paths.empty()) return {};
    // jq covers exactly the simulated jumps |y| > eps.
    if (jq.taylor) throw std::invalid_argument("martingale samples need the quadrature of the truncated measure");
    const double eps = jq.eps;
    std::vector<double> psi_eps(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        psi_eps[k] = k == 0 ? 0.0 : std::max(0.0, symbol.psi[k] - model.inner_symbol(eps, g.dual_point(k)));
    const SymbolGrid sym_eps{g, psi_eps, "truncated"};
    const VariationTable table(sym_eps, jq, f, T, kVariationCells);

    std::vector<MartingaleSample> out(paths.size());
    BandLimited start_eval(f, psi_eps);
    start_eval.set_time(T);
    const double m0 = start_eval(paths.front().start[0]);
#pragma omp parallel
    {
        BandLimited ev(f, psi_eps);
#pragma omp for schedule(dynamic, 32)
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const PathSample& p = paths[i];
            double x = p.start[0], realized = 0.0;
            for (std::size_t j = 0; j < p.times.size(); ++j) {
                ev.set_time(T - p.times[j]);
                const double dm = ev(x + p.jumps[j][0]) - ev(x);
                realized += dm * dm;
                x += p.jumps[j][0];
            }
            ev.set_time(0.0);
            out[i] = {ev(x) - m0, realized, table.along(p)};
        }
    }
    return out;
}

bool MartingaleCheck::mean_zero() const { return std::abs(m.mean) <= 3.0 * m.se; }

bool MartingaleCheck::isometry() const {
    return std::abs(m2.mean - predictable.mean) <= tolerance * predictable.mean;
}

bool MartingaleCheck::variations_agree() const {
    return std::abs(realized.mean - predictable.mean) <= tolerance * predictable.mean;
}

json MartingaleCheck::to_json() const {
    auto mj = [](const Moments& x) { return json{{"mean", x.mean}, {"stderr", x.se}}; };
    return {{"n", n},
            {"T", T},
            {"eps", eps},
            {"M_T", mj(m)},
            {"M_T_squared", mj(m2)},
            {"realized_variation", mj(realized)},
            {"predictable_variation", mj(predictable)},
            {"tolerance", tolerance},
            {"mean_zero", mean_zero()},
            {"isometry", isometry()},
            {"variations_agree", variations_agree()}};
}

VerificationReport MartingaleCheck::verification() const {
    VerificationReport r;
    r.identity = "ito-isometry";
    r.lhs = m2.mean;
    r.rhs = predictable.mean;
    r.rel_error = relative_error(predictable.mean, m2.mean);
    r.tolerance = tolerance;
    r.passed = passed();
    r.details = to_json();
    return r;
}

MartingaleCheck martingale_check(const LevyModel& model, const SymbolGrid& symbol, const GridJumpQuadrature& jq,
                                 const GridFunction& f, const PathConfig& cfg, double tolerance) {
    require_1d(symbol.grid, "the martingale check");
    const LevyModel sim = model.kind() == ModelKind::CompoundPoisson ? truncated_atoms(model, cfg.eps) : model;
    GridQuadratureOptions opts = jq.options;
    opts.eps = cfg.eps;
    opts.taylor_completion = false;
    const GridJumpQuadrature jq_eps = build_grid_quadrature(sim, symbol.grid, opts);
    const std::vector<PathSample> paths = simulate_paths(model, cfg);
    const std::vector<MartingaleSample> s = martingale_samples(model, symbol, jq_eps, f, paths, cfg.T);
    std::vector<double> a(s.size()), b(s.size()), c(s.size()), e(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        a[i] = s[i].terminal;
        b[i] = s[i].terminal * s[i].terminal;
        c[i] = s[i].realized;
        e[i] = s[i].predictable;
    }
    MartingaleCheck chk;
    chk.n = s.size();
    chk.T = cfg.T;
    chk.eps = cfg.eps;
    chk.m = sample_moments(a);
    chk.m2 = sample_moments(b);
    chk.realized = sample_moments(c);
    chk.predictable = sample_moments(e);
    chk.tolerance = tolerance;
    return chk;
}

bool GstarIntegratedCheck::passed() const {
    return std::abs(lhs - rhs) <= tolerance * std::abs(lhs) + 3.0 * rhs_stderr;
}

json GstarIntegratedCheck::to_json() const {
    return {{"T", T},
            {"lhs", lhs},
            {"rhs", rhs},
            {"rhs_stderr", rhs_stderr},
            {"z_points", z_points},
            {"paths_per_z", paths_per_z},
            {"tolerance", tolerance},
            {"passed", passed()}};
}

VerificationReport GstarIntegratedCheck::verification() const {
    VerificationReport r;
    r.identity = "gstar-integrated";
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_error = relative_error(lhs, rhs);
    r.tolerance = tolerance;
    r.passed = passed();
    r.details = to_json();
    return r;
}

GstarIntegratedCheck gstar_integrated_check(const LevyModel& model, const SymbolGrid& symbol,
                                            const GridJumpQuadrature& jq, const TimeQuadrature& tq,
                                            const GridFunction& f, const PathConfig& cfg, int z_stride,
                                            double tolerance) {
    const Grid& g = symbol.grid;
    require_1d(g, "the integrated G_* check");
    if (z_stride < 1 || g.n() % z_stride != 0) throw std::invalid_argument("z stride must divide N");
    if (cfg.n < 1000) throw std::invalid_argument("the integrated G_* check needs at least 1e3 paths per start point");
    GstarIntegratedCheck chk;
    chk.T = cfg.T;
    chk.tolerance = tolerance;
    const SquareFunctionResult gs = square_Gstar(symbol, jq, tq, f, cfg.T);
    std::vector<double> sq(gs.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = gs.values[i] * gs.values[i];
    chk.lhs = pairwise_sum(sq) * g.cell_volume();

    const VariationTable table(symbol, jq, f, cfg.T, kVariationCells);
    const JumpSampler sampler(model, cfg.eps);
    guard(sampler, cfg);
    const int Z = g.n() / z_stride;
    const double hz = z_stride * g.h();
    std::vector<double> means(Z), vars(Z);
    for (int iz = 0; iz < Z; ++iz) {
        PathConfig c = cfg;
        c.z = {g.coord(iz * z_stride), 0.0};
        c.seed = derive_seed(cfg.seed, 0x5A000000ull + std::uint64_t(iz));
        std::vector<double> v(cfg.n);
#pragma omp parallel for schedule(dynamic, 64)
        for (std::size_t i = 0; i < cfg.n; ++i) {
            PathSample p{c.z, {}, {}};
            walk(sampler, c, i, [&](double t, const Vec2& y) {
                p.times.push_back(t);
                p.jumps.push_back(y);
            });
            v[i] = table.along(p);
        }
        const Moments mo = sample_moments(v);
        means[iz] = mo.mean * hz;
        vars[iz] = mo.se * mo.se * hz * hz;
    }
    chk.rhs = pairwise_sum(means);
    chk.rhs_stderr = std::sqrt(pairwise_sum(vars));
    chk.z_points = std::size_t(Z);
    chk.paths_per_z = cfg.n;
    return chk;
}

}  // namespace levy
