// Seeded generator for the check suites and property tests. splitmix64
// keeps reports byte-identical across standard libraries, which the
// deterministic-output contract needs.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace pfm {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        double u = 1.0 - uniform();  // (0, 1]
        double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
    }

    std::complex<double> complex_normal() { return {normal(), normal()}; }

private:
    std::uint64_t state_;
};

}  // namespace pfm
