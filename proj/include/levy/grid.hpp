#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace levy {

using Vec2 = std::array<double, 2>;
using cplx = std::complex<double>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(const Vec2& a);

// Uniform periodic grid on [-L, L)^d, d in {1, 2}. Points are stored row-major;
// in 1-D the second coordinate of every point is 0.
class Grid {
public:
    Grid(int d, int N, double L);

    int dim() const { return d_; }
    int n() const { return N_; }
    double half_width() const { return L_; }
    double h() const { return 2.0 * L_ / N_; }
    double cell_volume() const;
    std::size_t size() const { return d_ == 1 ? std::size_t(N_) : std::size_t(N_) * N_; }

    double coord(int i) const { return -L_ + i * h(); }
    Vec2 point(std::size_t idx) const;

    // FFT-ordered index k -> signed index in [-N/2, N/2).
    int signed_index(int k) const { return k < N_ / 2 ? k : k - N_; }
    double frequency(int k) const;
    Vec2 dual_point(std::size_t idx) const;
    double dual_spacing() const;

    std::size_t index(int i0, int i1 = 0) const {
        return d_ == 1 ? std::size_t(i0) : std::size_t(i0) * N_ + i1;
    }
    // Periodic neighbour of idx displaced by (o0, o1) grid steps.
    std::size_t shifted(std::size_t idx, int o0, int o1) const;

    bool operator==(const Grid& o) const { return d_ == o.d_ && N_ == o.N_ && L_ == o.L_; }

private:
    int d_;
    int N_;
    double L_;
};

class GridFunction {
public:
    explicit GridFunction(const Grid& g);
    GridFunction(const Grid& g, std::vector<double> values);

    static GridFunction sample(const Grid& g, const std::function<double(const Vec2&)>& f);

    const Grid& grid() const { return grid_; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    // (sum |f|^p h^d)^(1/p); p = infinity gives the max norm.
    double norm_p(double p) const;
    double integral() const;
    double inner(const GridFunction& other) const;
    double max_abs() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double c);

private:
    Grid grid_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

struct SpectrumFunction {
    Grid grid;
    std::vector<cplx> values;
};

}  // namespace levy
