#pragma once

#include <vector>

#include "levy/grid.hpp"

namespace levy {

// Unnormalised DFTs over a grid's index space.
//   plus:  out_k = sum_j in_j exp(+2 pi i j.k / N)
//   minus: out_j = sum_k in_k exp(-2 pi i j.k / N)
// Plans are created once per (d, N) with FFTW_ESTIMATE, so results are
// bit-reproducible across runs and thread counts.
class Fft {
public:
    explicit Fft(const Grid& g);

    void plus(const cplx* in, cplx* out) const;
    void minus(const cplx* in, cplx* out) const;

    // Raw spectrum of a real array (plus transform).
    std::vector<cplx> spectrum(const std::vector<double>& f) const;
    // Real part of minus(F) / N^d.
    std::vector<double> real_inverse(const std::vector<cplx>& F) const;
    void real_inverse(const std::vector<cplx>& F, std::vector<cplx>& scratch, double* out) const;

    std::size_t size() const { return n_; }

private:
    void* plus_plan_;
    void* minus_plan_;
    std::size_t n_;
};

}  // namespace levy
