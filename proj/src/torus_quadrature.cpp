#include "levy/torus_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "levy/fft.hpp"

namespace levy {

namespace {

constexpr int kStraddleDepth = 6;
constexpr double kJumpThreshold = 1e-6;

double weight_at(const YWeight& k, const Vec2& y) { return k ? k(y) : 1.0; }

int wrap(long j, int N) {
    long r = j % N;
    if (r < 0) r += N;
    return int(r);
}

struct Ray {
    Vec2 e;
    double scale;
};

std::vector<Ray> rays_of(const LevyModel& m, int n_angular) {
    std::vector<Ray> rays;
    if (m.kind() == ModelKind::AxisStable) {
        for (int i = 0; i < m.dim(); ++i)
            for (double s : {1.0, -1.0}) {
                Vec2 e{0.0, 0.0};
                e[i] = s;
                rays.push_back({e, 1.0});
            }
    } else if (m.dim() == 1) {
        rays = {{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}};
    } else {
        if (n_angular < 2 || n_angular % 2 != 0) throw std::invalid_argument("n_angular must be even and >= 2");
        const double dth = 2.0 * std::numbers::pi / n_angular;
        for (int j = 0; j < n_angular; ++j) rays.push_back({{std::cos(j * dth), std::sin(j * dth)}, dth});
    }
    return rays;
}

}  // namespace

double GridJumpQuadrature::implied_symbol(const Vec2& xi) const {
    if (xi[0] == 0.0 && xi[1] == 0.0) return 0.0;
    double s = 0.0;
    for (const JumpNode& n : near) s += n.w * (1.0 - std::cos(dot(xi, n.y)));
    const double h = grid.h();
    for (const LatticeNode& n : far) s += n.w * (1.0 - std::cos(h * (xi[0] * n.o0 + xi[1] * n.o1)));
    if (taylor) {
        const auto& M = inner_matrix;
        s += 0.5 * (M[0] * xi[0] * xi[0] + (M[1] + M[2]) * xi[0] * xi[1] + M[3] * xi[1] * xi[1]);
    }
    return s;
}

std::vector<double> implied_symbol_grid(const GridJumpQuadrature& q) {
    const Grid& g = q.grid;
    const std::size_t n = g.size();
    std::vector<double> lattice(n, 0.0);
    const int N = g.n();
    auto wrap_idx = [N](int o) { return o < 0 ? o + N : o; };
    for (const LatticeNode& node : q.far) lattice[g.index(wrap_idx(node.o0), g.dim() == 1 ? 0 : wrap_idx(node.o1))] += node.w;
    const double far_total = q.total_far_weight();
    Fft fft(g);
    const std::vector<cplx> W = fft.spectrum(lattice);
    std::vector<double> psi(n);
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 xi = g.dual_point(k);
        double s = far_total - W[k].real();
        for (const JumpNode& node : q.near) s += node.w * (1.0 - std::cos(dot(xi, node.y)));
        if (q.taylor) {
            const auto& M = q.inner_matrix;
            s += 0.5 * (M[0] * xi[0] * xi[0] + (M[1] + M[2]) * xi[0] * xi[1] + M[3] * xi[1] * xi[1]);
        }
        psi[k] = k == 0 ? 0.0 : s;
    }
    return psi;
}

double GridJumpQuadrature::total_far_weight() const {
    double s = 0.0;
    for (const LatticeNode& n : far) s += n.w;
    return s;
}

GridJumpQuadrature build_grid_quadrature(const LevyModel& model, const Grid& grid, const GridQuadratureOptions& opts,
                                         const YWeight& k) {
    if (model.dim() != grid.dim()) throw std::invalid_argument("model and grid dimensions differ");
    const double h = grid.h();
    const int N = grid.n();
    const double eps = opts.eps > 0.0 ? opts.eps : 0.5 * h;
    const int m_near = std::max(opts.near_cells, int(std::ceil(opts.near_radius / h - 1e-9)));
    const double r_near = (m_near + 0.5) * h;
    if (!(eps < r_near)) throw std::invalid_argument("inner cutoff must lie inside the near field");
    GridJumpQuadrature q{grid, model, eps, r_near, opts.taylor_completion, {}, {}, {}, {0.0, 0.0, 0.0, 0.0}, opts};

    if (model.kind() == ModelKind::CompoundPoisson) {
        q.taylor = false;
        for (const Atom& a : model.atoms()) q.near.push_back({a.location, a.mass * weight_at(k, a.location)});
        return q;
    }

    const std::vector<Ray> rays = rays_of(model, opts.n_angular);
    const double m2 = model.ray_moment(2.0, eps);
    for (const Ray& ray : rays) {
        const double wk = weight_at(k, {0.5 * eps * ray.e[0], 0.5 * eps * ray.e[1]});
        q.inner_rays.push_back({ray.e, ray.scale, wk});
        const double c = wk * ray.scale * m2;
        q.inner_matrix[0] += c * ray.e[0] * ray.e[0];
        q.inner_matrix[1] += c * ray.e[0] * ray.e[1];
        q.inner_matrix[2] += c * ray.e[1] * ray.e[0];
        q.inner_matrix[3] += c * ray.e[1] * ray.e[1];
    }

    // Near field: composite Gauss-Legendre in log r, panels split where k jumps along the ray.
    std::vector<double> x, w;
    const double octaves = std::log2(r_near / eps);
    const int panels = std::max(1, int(std::ceil(octaves * opts.log_panels_per_octave)));
    const double s0 = std::log(eps), ds = (std::log(r_near) - s0) / panels;
    for (const Ray& ray : rays) {
        auto k_at = [&](double ls) {
            const double rr = std::exp(ls);
            return k({ray.e[0] * rr, ray.e[1] * rr});
        };
        std::vector<double> cuts;
        for (int p = 0; p <= panels; ++p) cuts.push_back(s0 + p * ds);
        if (k) {
            std::vector<double> extra;
            for (int p = 0; p < panels; ++p) {
                gauss_legendre_panel(cuts[p], cuts[p + 1], x, w);
                std::vector<double> probe{cuts[p]};
                probe.insert(probe.end(), x.begin(), x.end());
                probe.push_back(cuts[p + 1]);
                double scale = 0.0;
                std::vector<double> kv;
                for (double ls : probe) {
                    kv.push_back(k_at(ls));
                    scale = std::max(scale, std::abs(kv.back()));
                }
                for (std::size_t i = 0; i + 1 < probe.size(); ++i) {
                    if (kv[i] == kv[i + 1]) continue;
                    double a = probe[i], b = probe[i + 1], ka = kv[i];
                    for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
                        const double mid = 0.5 * (a + b), km = k_at(mid);
                        if (km == ka) a = mid; else b = mid;
                    }
                    if (std::abs(k_at(b) - k_at(a)) > kJumpThreshold * scale) extra.push_back(0.5 * (a + b));
                }
            }
            cuts.insert(cuts.end(), extra.begin(), extra.end());
            std::sort(cuts.begin(), cuts.end());
        }
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            if (cuts[p + 1] - cuts[p] <= 0.0) continue;
            gauss_legendre_panel(cuts[p], cuts[p + 1], x, w);
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double rr = std::exp(x[i]);
                const Vec2 y{ray.e[0] * rr, ray.e[1] * rr};
                const double wk = ray.scale * w[i] * rr * model.ray_density(rr) * weight_at(k, y);
                if (wk != 0.0) q.near.push_back({y, wk});
            }
        }
    }

    // Far field folded onto lattice offsets.
    std::vector<double> lattice(grid.size(), 0.0);
    auto add = [&](int o0, int o1, double wt) { lattice[grid.index(wrap(o0, N), grid.dim() == 1 ? 0 : wrap(o1, N))] += wt; };
    const double per_ray = 1.0 / model.ray_count();

    if (grid.dim() == 1 || model.kind() == ModelKind::AxisStable) {
        std::vector<double> sx, sw;
        gauss_legendre_panel(-0.5, 0.5, sx, sw);
        // density-weighted mean of k over the shell folded onto offset j
        auto shell_weight = [&](int a0, int a1, long j) {
            if (!k) return 1.0;
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < sx.size(); ++i) {
                const double r = (double(j) + sx[i]) * h;
                const double w = sw[i] * model.ray_density(r);
                num += w * k({a0 * r, a1 * r});
                den += w;
            }
            return den > 0.0 ? num / den : k({a0 * j * h, a1 * j * h});
        };
        const long J = long(std::ceil(opts.fold_extent * grid.half_width() / h));
        for (const Ray& ray : rays) {
            const int a0 = int(std::lround(ray.e[0])), a1 = int(std::lround(ray.e[1]));
            for (long j = m_near + 1; j <= J; ++j) {
                const double mass = per_ray * model.shell_mass((j - 0.5) * h, (j + 0.5) * h);
                if (mass == 0.0) continue;
                add(int(a0 * (j % N)), int(a1 * (j % N)), mass * shell_weight(a0, a1, j));
            }
            const double rest = per_ray * model.tail_mass((J + 0.5) * h);
            if (rest > 0.0) {
                const double wk = weight_at(k, {a0 * (J + 1) * h, a1 * (J + 1) * h}) * rest / N;
                for (int o = 0; o < N; ++o) add(a0 * o, a1 * o, wk);
            }
        }
    } else {
        const int J = int(std::ceil(opts.fold_extent_2d * grid.half_width() / h));
        std::vector<double> gx, gw;
        gauss_legendre_panel(-0.5, 0.5, gx, gw);
        const double g2 = 0.5 / std::sqrt(3.0);
        // circles where the integrand jumps: the near-field boundary and a truncation radius
        std::vector<double> jumps{r_near};
        if (model.kind() == ModelKind::TruncatedStable) jumps.push_back(model.radius());
        auto straddles = [&](double dmin, double dmax) {
            for (double r : jumps)
                if (dmin < r && dmax > r) return true;
            return false;
        };
        // mass of nu(dy) 1{|y| > r_near} over the square of side `size` centred at (cx, cy); kmass carries k(y)
        double kmass = 0.0;
        std::function<double(double, double, double, int)> cell_mass = [&](double cx, double cy, double size,
                                                                             int depth) -> double {
            const double half = 0.5 * size;
            const double dmin = std::hypot(std::max(0.0, std::abs(cx) - half), std::max(0.0, std::abs(cy) - half));
            const double dmax = std::hypot(std::abs(cx) + half, std::abs(cy) + half);
            if (dmax <= r_near) return 0.0;
            if (straddles(dmin, dmax) && depth > 0) {
                const double q = 0.25 * size;
                return cell_mass(cx - q, cy - q, half, depth - 1) + cell_mass(cx + q, cy - q, half, depth - 1) +
                       cell_mass(cx - q, cy + q, half, depth - 1) + cell_mass(cx + q, cy + q, half, depth - 1);
            }
            double mass = 0.0;
            if (dmin > 16.0 * size && !straddles(dmin, dmax)) {
                for (double u : {-g2, g2})
                    for (double v : {-g2, g2}) {
                        const Vec2 y{cx + u * size, cy + v * size};
                        const double dm = 0.25 * size * size * model.density(y);
                        mass += dm;
                        kmass += dm * weight_at(k, y);
                    }
                return mass;
            }
            for (std::size_t a = 0; a < gx.size(); ++a)
                for (std::size_t b = 0; b < gx.size(); ++b) {
                    const Vec2 y{cx + gx[a] * size, cy + gx[b] * size};
                    if (norm(y) <= r_near) continue;
                    const double dm = gw[a] * gw[b] * size * size * model.density(y);
                    mass += dm;
                    kmass += dm * weight_at(k, y);
                }
            return mass;
        };
        double accounted = 0.0;
        for (int j0 = -J; j0 <= J; ++j0)
            for (int j1 = -J; j1 <= J; ++j1) {
                kmass = 0.0;
                const double mass = cell_mass(j0 * h, j1 * h, h, kStraddleDepth);
                accounted += mass;
                if (mass > 0.0) add(j0, j1, kmass);
            }
        const double rest = std::max(0.0, model.tail_mass(r_near) - accounted);
        if (rest > 0.0) {
            const double far = (J + 1) * h;
            const double wk = weight_at(k, {far, far}) * rest / double(grid.size());
            for (double& v : lattice) v += wk;
        }
    }
    for (std::size_t idx = 1; idx < lattice.size(); ++idx) {
        if (lattice[idx] == 0.0) continue;
        int o0, o1 = 0;
        if (grid.dim() == 1) {
            o0 = grid.signed_index(int(idx));
        } else {
            o0 = grid.signed_index(int(idx / N));
            o1 = grid.signed_index(int(idx % N));
        }
        q.far.push_back({o0, o1, lattice[idx]});
    }
    return q;
}

}  // namespace levy
