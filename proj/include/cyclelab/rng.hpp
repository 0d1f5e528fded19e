#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cyclelab/types.hpp"

namespace cyclelab {

/// Mixes a base seed with a stream id so independent consumers never share a sequence.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator whose output is identical on every platform: the engine is mt19937_64 and
/// all conversions to floating point are done here instead of by std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();  ///< [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    cplx complex_normal();
    CVec complex_normal_vector(int n);
    int below(int n);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Radical-inverse point `index` of the Halton sequence in `dim` dimensions (bases = first primes).
std::vector<double> halton_point(std::uint64_t index, int dim);

}  // namespace cyclelab
