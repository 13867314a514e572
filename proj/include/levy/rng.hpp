#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace levy {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Sub-seed for stream `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

// mt19937_64 with distribution code written out, so draws are identical across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on the open interval (0, 1).
    double uniform() { return (double(eng_() >> 11) + 0.5) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double exponential() { return -std::log(uniform()); }
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        return r * std::cos(2.0 * std::numbers::pi * uniform());
    }
    std::uint64_t next() { return eng_(); }
    std::size_t index(std::size_t n) { return std::size_t(uniform() * double(n)) % n; }

private:
    std::mt19937_64 eng_;
};

}  // namespace levy
