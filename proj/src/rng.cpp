#include "cyclelab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cyclelab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined word
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

CVec Rng::complex_normal_vector(int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
}

int Rng::below(int n) { return static_cast<int>(uniform() * n); }

std::vector<double> halton_point(std::uint64_t index, int dim) {
    static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    if (dim > static_cast<int>(std::size(primes))) throw std::invalid_argument("halton_point: dimension too large");
    std::vector<double> x(dim);
    for (int d = 0; d < dim; ++d) {
        const std::uint64_t b = primes[d];
        double f = 1.0, r = 0.0;
        for (std::uint64_t i = index; i > 0; i /= b) {
            f /= static_cast<double>(b);
            r += f * static_cast<double>(i % b);
        }
        x[d] = r;
    }
    return x;
}

}  // namespace cyclelab
