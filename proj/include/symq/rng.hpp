#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace symq {

// Small deterministic generator (splitmix64 core). Substreams are derived
// from (seed, counter) so sampling loops can run in any order, or in
// parallel, and still produce identical results for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng substream(std::uint64_t seed, std::uint64_t counter) {
        Rng r(seed);
        std::uint64_t mixed = r.next_u64() ^ (counter * 0x9e3779b97f4a7c15ULL);
        return Rng(mixed);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (uncached; two uniforms per draw).
    double next_gaussian() {
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // E|z|^2 = 1.
    std::complex<double> next_complex_gaussian() {
        double re = next_gaussian();
        double im = next_gaussian();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

private:
    std::uint64_t state_;
};

}  // namespace symq
