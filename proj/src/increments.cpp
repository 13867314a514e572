#include "levy/increments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "levy/fft.hpp"

namespace levy {

IncrementEngine::IncrementEngine(const SymbolGrid& symbol, const GridJumpQuadrature& quad)
    : symbol_(symbol), quad_(quad) {
    if (!(symbol.grid == quad.grid)) throw std::invalid_argument("symbol and quadrature grids differ");
    const Grid& g = symbol.grid;
    const LevyModel& m = quad.model;
    inner_.profile = {m.density_constant(), m.alpha(),
                      m.kind() == ModelKind::TemperedStable ? m.lambda() : 0.0};
    inner_.eps = quad.eps;
    inner_.rays = quad.inner_rays;
    inner_.M = quad.inner_matrix;
    const int N = g.n();
    for (const JumpNode& node : quad.near) {
        std::vector<cplx> ph(std::size_t(g.dim()) * N);
        for (int a = 0; a < g.dim(); ++a)
            for (int k = 0; k < N; ++k) {
                const double arg = -g.frequency(k) * node.y[a];
                ph[std::size_t(a) * N + k] = cplx(std::cos(arg), std::sin(arg));
            }
        phases_.push_back(std::move(ph));
    }
    if (quad.far.size() > kDirectLatticeMax) {
        lattice_fft_ = true;
        lattice_w_.assign(g.size(), 0.0);
        auto wrap = [N](int o) { return ((o % N) + N) % N; };
        for (const LatticeNode& node : quad.far)
            lattice_w_[g.index(wrap(node.o0), g.dim() == 1 ? 0 : wrap(node.o1))] += node.w;
        lattice_total_ = quad.total_far_weight();
        lattice_hat_ = Fft(g).spectrum(lattice_w_);
    }
    neg_.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.dim() == 1)
            neg_[k] = (N - int(k)) % N;
        else
            neg_[k] = g.index((N - int(k) / N) % N, (N - int(k) % N) % N);
    }
}

// Lattice part of the G~ term, sum_o w_o (u(x+o) - u(x))^2 [|u(x+o)| < |u(x)|].
// Points are bucketed by |u|; buckets strictly below x's go through convolutions,
// pairs inside x's own bucket are summed directly.
void IncrementEngine::lattice_gt(const std::vector<double>& u, const Convolver& conv, std::vector<double>& gt) const {
    const Grid& grid = symbol_.grid;
    const std::size_t n = u.size();
    const int N = grid.n();
    std::vector<std::size_t> ord(n);
    std::iota(ord.begin(), ord.end(), std::size_t(0));
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return std::abs(u[a]) < std::abs(u[b]); });

    const double lg = std::max(1.0, std::log2(double(n)));
    const std::size_t B = std::clamp<std::size_t>(std::size_t(std::sqrt(double(n) / (6.0 * lg))), 1, 64);
    std::vector<std::size_t> start{0};
    for (std::size_t c = 1; c < B; ++c) {
        std::size_t s = std::max(start.back(), c * n / B);
        while (s > 0 && s < n && std::abs(u[ord[s]]) == std::abs(u[ord[s - 1]])) ++s;
        if (s > start.back() && s < n) start.push_back(s);
    }
    start.push_back(n);

    std::vector<double> m0(n, 0.0), m1(n, 0.0), m2(n, 0.0), c0, c1, c2;
    for (std::size_t b = 0; b + 1 < start.size(); ++b) {
        const std::size_t lo = start[b], hi = start[b + 1];
        if (b > 0) {
            conv(m0, c0);
            conv(m1, c1);
            conv(m2, c2);
            for (std::size_t r = lo; r < hi; ++r) {
                const std::size_t x = ord[r];
                gt[x] += c2[x] - 2.0 * u[x] * c1[x] + u[x] * u[x] * c0[x];
            }
        }
        std::size_t tie = lo;
        for (std::size_t r = lo; r < hi; ++r) {
            const std::size_t x = ord[r];
            const double ax = std::abs(u[x]);
            while (std::abs(u[ord[tie]]) < ax) ++tie;
            double s = 0.0;
            for (std::size_t q = lo; q < tie; ++q) {
                const std::size_t y = ord[q];
                std::size_t o;
                if (grid.dim() == 1)
                    o = (y + n - x) % n;
                else
                    o = grid.index((int(y) / N - int(x) / N + N) % N, (int(y) % N - int(x) % N + N) % N);
                const double diff = u[y] - u[x];
                s += lattice_w_[o] * diff * diff;
            }
            gt[x] += s;
        }
        for (std::size_t r = lo; r < hi; ++r) {
            const std::size_t y = ord[r];
            m0[y] = 1.0;
            m1[y] = u[y];
            m2[y] = u[y] * u[y];
        }
    }
}

void IncrementEngine::evaluate(const std::vector<double>& times, const kernels::Terms& terms, const GridFunction& f,
                               const GridFunction* g, const Visitor& visit) const {
    const Grid& grid = symbol_.grid;
    if (!(f.grid() == grid) || (g && !(g->grid() == grid))) throw std::invalid_argument("function grid mismatch");
    if (terms.cross && !g) throw std::invalid_argument("cross terms need a second function");
    const std::size_t n = grid.size();
    const int N = grid.n(), d = grid.dim();
    Fft fft(grid);
    const std::vector<cplx> F = fft.spectrum(f.values());
    std::vector<cplx> G;
    if (terms.cross) G = fft.spectrum(g->values());

    std::vector<cplx> U(n), V(n), D(n), E(n), D2(n), E2(n), C(n), scratch(n);
    std::vector<double> u(n), v(n), du(n), dv(n), du2(n), dv2(n), upow, uder;
    std::vector<std::vector<double>> gu(d, std::vector<double>(n)), gv(d, std::vector<double>(n));
    kernels::Accumulators acc;

    const bool need_inner = quad_.taylor;
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double t = times[j];
        for (std::size_t k = 0; k < n; ++k) {
            const double e = std::exp(-t * symbol_.psi[k]);
            U[k] = F[k] * e;
            if (terms.cross) V[k] = G[k] * e;
        }
        fft.real_inverse(U, scratch, u.data());
        if (terms.cross) fft.real_inverse(V, scratch, v.data());
        acc.reset(n, terms);

        // Two real inverse transforms per complex FFT: Hermitian parts packed as H1 + i H2.
        auto pair_inverse = [&](const std::vector<cplx>& A, const std::vector<cplx>* B, double* a, double* b) {
            const double* x = reinterpret_cast<const double*>(A.data());
            const double* y = B ? reinterpret_cast<const double*>(B->data()) : nullptr;
            double* c = reinterpret_cast<double*>(C.data());
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t m = neg_[k];
                const double ar = 0.5 * (x[2 * k] + x[2 * m]), ai = 0.5 * (x[2 * k + 1] - x[2 * m + 1]);
                double br = 0.0, bi = 0.0;
                if (y) {
                    br = 0.5 * (y[2 * k] + y[2 * m]);
                    bi = 0.5 * (y[2 * k + 1] - y[2 * m + 1]);
                }
                c[2 * k] = ar - bi;
                c[2 * k + 1] = ai + br;
            }
            fft.minus(C.data(), scratch.data());
            const double s = 1.0 / double(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = scratch[i].real() * s;
                if (b) b[i] = scratch[i].imag() * s;
            }
        };
        // (e^{-i xi.y} - 1) U, and the same for V
        auto shift_spectra = [&](std::size_t q, std::vector<cplx>& Dq, std::vector<cplx>& Eq) {
            const cplx* ph = phases_[q].data();
            const std::size_t rows = d == 1 ? 1 : std::size_t(N), cols = d == 1 ? n : std::size_t(N);
            for (std::size_t r = 0; r < rows; ++r) {
                const cplx p0 = d == 1 ? cplx(1.0) : ph[r];
                const cplx* ph1 = d == 1 ? ph : ph + N;
                for (std::size_t c = 0; c < cols; ++c) {
                    const std::size_t k = r * cols + c;
                    const double pr = p0.real() * ph1[c].real() - p0.imag() * ph1[c].imag() - 1.0;
                    const double pi = p0.real() * ph1[c].imag() + p0.imag() * ph1[c].real();
                    const cplx uk = U[k];
                    Dq[k] = cplx(pr * uk.real() - pi * uk.imag(), pr * uk.imag() + pi * uk.real());
                    if (terms.cross) {
                        const cplx vk = V[k];
                        Eq[k] = cplx(pr * vk.real() - pi * vk.imag(), pr * vk.imag() + pi * vk.real());
                    }
                }
            }
        };
        for (std::size_t q = 0; q < quad_.near.size(); q += 2) {
            const bool two = q + 1 < quad_.near.size();
            shift_spectra(q, D, E);
            if (two) shift_spectra(q + 1, D2, E2);
            if (terms.cross) {
                pair_inverse(D, &E, du.data(), dv.data());
                if (two) pair_inverse(D2, &E2, du2.data(), dv2.data());
            } else {
                pair_inverse(D, two ? &D2 : nullptr, du.data(), two ? du2.data() : nullptr);
            }
            kernels::parallel::near_node(terms, quad_.near[q].w, n, u.data(), du.data(), v.data(), dv.data(), acc);
            if (two)
                kernels::parallel::near_node(terms, quad_.near[q + 1].w, n, u.data(), du2.data(), v.data(), dv2.data(),
                                             acc);
        }

        if (lattice_fft_) {
            // sum_o w_o a(x+o) = IFFT(conj(W) A)
            const Convolver conv = [&](const std::vector<double>& a, std::vector<double>& out) {
                std::vector<cplx> A = fft.spectrum(a);
                for (std::size_t k = 0; k < n; ++k) A[k] *= std::conj(lattice_hat_[k]);
                out.resize(n);
                fft.real_inverse(A, scratch, out.data());
            };
            const double W = lattice_total_;
            std::vector<double> cu, tmp, ctmp;
            if (terms.hs || terms.g || terms.cross) conv(u, cu);
            if (terms.hs) {
                tmp.resize(n);
                for (std::size_t i = 0; i < n; ++i) tmp[i] = std::pow(std::abs(u[i]), terms.p);
                conv(tmp, ctmp);
                for (std::size_t i = 0; i < n; ++i) {
                    const double a = u[i];
                    const double der = a == 0.0 ? 0.0 : terms.p * std::copysign(std::pow(std::abs(a), terms.p - 1.0), a);
                    acc.hs[i] += ctmp[i] - W * tmp[i] - der * (cu[i] - W * a);
                }
            }
            if (terms.g) {
                tmp.resize(n);
                for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] * u[i];
                conv(tmp, ctmp);
                for (std::size_t i = 0; i < n; ++i) acc.g[i] += ctmp[i] - 2.0 * u[i] * cu[i] + W * u[i] * u[i];
            }
            if (terms.cross) {
                std::vector<double> cv;
                conv(v, cv);
                tmp.resize(n);
                for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] * v[i];
                conv(tmp, ctmp);
                for (std::size_t i = 0; i < n; ++i)
                    acc.cross[i] += ctmp[i] - u[i] * cv[i] - v[i] * cu[i] + W * u[i] * v[i];
            }
            if (terms.gt) lattice_gt(u, conv, acc.gt);
        } else if (!quad_.far.empty()) {
            if (terms.hs) {
                upow.resize(n);
                uder.resize(n);
                kernels::power_tables(terms.p, n, u.data(), upow.data(), uder.data());
            }
            kernels::parallel::lattice(terms, grid, quad_.far, u.data(), v.data(), upow.data(), uder.data(), acc);
        }

        if (need_inner) {
            for (int a = 0; a < d; ++a) {
                for (std::size_t k = 0; k < n; ++k) {
                    const int kk = d == 1 ? int(k) : (a == 0 ? int(k / N) : int(k % N));
                    const double xi = kk == N / 2 ? 0.0 : grid.frequency(kk);
                    D[k] = cplx(0.0, -xi) * U[k];
                    if (terms.cross) E[k] = cplx(0.0, -xi) * V[k];
                }
                fft.real_inverse(D, scratch, gu[a].data());
                if (terms.cross) fft.real_inverse(E, scratch, gv[a].data());
            }
            kernels::parallel::inner(terms, inner_, n, u.data(), gu[0].data(), d == 2 ? gu[1].data() : nullptr,
                                     gv[0].data(), d == 2 ? gv[1].data() : nullptr, acc);
        }
        visit(j, t, acc, u);
    }
}

}  // namespace levy
