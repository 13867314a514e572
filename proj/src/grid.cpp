#include "levy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "levy/reduce.hpp"

namespace levy {

double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }

Grid::Grid(int d, int N, double L) : d_(d), N_(N), L_(L) {
    if (d != 1 && d != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    if (N < 4 || (N & (N - 1)) != 0) throw std::invalid_argument("grid N must be a power of two >= 4");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid half-width L must be positive");
}

double Grid::cell_volume() const { return d_ == 1 ? h() : h() * h(); }

Vec2 Grid::point(std::size_t idx) const {
    if (d_ == 1) return {coord(int(idx)), 0.0};
    return {coord(int(idx / N_)), coord(int(idx % N_))};
}

double Grid::frequency(int k) const { return std::numbers::pi * signed_index(k) / L_; }

double Grid::dual_spacing() const { return std::numbers::pi / L_; }

Vec2 Grid::dual_point(std::size_t idx) const {
    if (d_ == 1) return {frequency(int(idx)), 0.0};
    return {frequency(int(idx / N_)), frequency(int(idx % N_))};
}

std::size_t Grid::shifted(std::size_t idx, int o0, int o1) const {
    const int mask = N_ - 1;
    if (d_ == 1) return std::size_t((int(idx) + o0) & mask);
    const int i0 = int(idx / N_), i1 = int(idx % N_);
    return std::size_t(((i0 + o0) & mask) * N_ + ((i1 + o1) & mask));
}

GridFunction::GridFunction(const Grid& g) : grid_(g), values_(g.size(), 0.0) {}

GridFunction::GridFunction(const Grid& g, std::vector<double> values)
    : grid_(g), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("grid function size does not match grid");
}

GridFunction GridFunction::sample(const Grid& g, const std::function<double(const Vec2&)>& f) {
    GridFunction out(g);
    for (std::size_t i = 0; i < g.size(); ++i) out.values_[i] = f(g.point(i));
    return out;
}

double GridFunction::norm_p(double p) const {
    if (std::isinf(p)) return max_abs();
    if (!(p > 0.0)) throw std::invalid_argument("norm exponent must be positive");
    std::vector<double> terms(values_.size());
    std::transform(values_.begin(), values_.end(), terms.begin(),
                   [p](double v) { return p == 2.0 ? v * v : std::pow(std::abs(v), p); });
    return std::pow(pairwise_sum(terms) * grid_.cell_volume(), 1.0 / p);
}

double GridFunction::integral() const { return pairwise_sum(values_) * grid_.cell_volume(); }

double GridFunction::inner(const GridFunction& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
    std::vector<double> terms(values_.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = values_[i] * other.values_[i];
    return pairwise_sum(terms) * grid_.cell_volume();
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

}  // namespace levy
