#include "levy/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace levy {

namespace {

struct PlanPair {
    fftw_plan plus;
    fftw_plan minus;
};

std::mutex planner_mutex;

PlanPair plans_for(int d, int N) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard lock(planner_mutex);
    auto it = cache.find({d, N});
    if (it != cache.end()) return it->second;
    const std::size_t n = d == 1 ? std::size_t(N) : std::size_t(N) * N;
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE;
    PlanPair p{};
    if (d == 1) {
        p.plus = fftw_plan_dft_1d(N, a, b, FFTW_BACKWARD, flags);
        p.minus = fftw_plan_dft_1d(N, a, b, FFTW_FORWARD, flags);
    } else {
        p.plus = fftw_plan_dft_2d(N, N, a, b, FFTW_BACKWARD, flags);
        p.minus = fftw_plan_dft_2d(N, N, a, b, FFTW_FORWARD, flags);
    }
    fftw_free(a);
    fftw_free(b);
    cache.emplace(std::make_pair(d, N), p);
    return p;
}

fftw_complex* raw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* raw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

}  // namespace

Fft::Fft(const Grid& g) : n_(g.size()) {
    const PlanPair p = plans_for(g.dim(), g.n());
    plus_plan_ = p.plus;
    minus_plan_ = p.minus;
}

namespace {

// Plans are made on fftw_alloc'd arrays; other arrays are staged through aligned
// buffers so the same codelets (and roundoff) are used regardless of allocation.
struct Staging {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t n = 0;
    ~Staging() {
        fftw_free(in);
        fftw_free(out);
    }
    void reserve(std::size_t m) {
        if (m <= n) return;
        fftw_free(in);
        fftw_free(out);
        in = fftw_alloc_complex(m);
        out = fftw_alloc_complex(m);
        n = m;
    }
};

void execute(void* plan, std::size_t n, const cplx* in, cplx* out) {
    auto p = static_cast<fftw_plan>(plan);
    if (in != out && fftw_alignment_of(const_cast<double*>(reinterpret_cast<const double*>(in))) == 0 &&
        fftw_alignment_of(reinterpret_cast<double*>(out)) == 0) {
        fftw_execute_dft(p, raw(in), raw(out));
        return;
    }
    thread_local Staging st;
    st.reserve(n);
    std::memcpy(st.in, in, n * sizeof(cplx));
    fftw_execute_dft(p, st.in, st.out);
    std::memcpy(static_cast<void*>(out), st.out, n * sizeof(cplx));
}

}  // namespace

void Fft::plus(const cplx* in, cplx* out) const { execute(plus_plan_, n_, in, out); }

void Fft::minus(const cplx* in, cplx* out) const { execute(minus_plan_, n_, in, out); }

std::vector<cplx> Fft::spectrum(const std::vector<double>& f) const {
    std::vector<cplx> in(f.begin(), f.end()), out(n_);
    plus(in.data(), out.data());
    return out;
}

std::vector<double> Fft::real_inverse(const std::vector<cplx>& F) const {
    std::vector<cplx> scratch(n_);
    std::vector<double> out(n_);
    real_inverse(F, scratch, out.data());
    return out;
}

void Fft::real_inverse(const std::vector<cplx>& F, std::vector<cplx>& scratch, double* out) const {
    scratch.resize(n_);
    minus(F.data(), scratch.data());
    const double s = 1.0 / double(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = scratch[i].real() * s;
}

}  // namespace levy
