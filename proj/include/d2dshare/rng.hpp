#pragma once

// Deterministic random source for Monte Carlo trials.
//
// All distribution transforms are implemented here instead of relying on
// <random> distribution classes, whose output is implementation-defined.
// This keeps trial output bit-identical across standard library versions.

#include <cmath>
#include <cstdint>
#include <random>

namespace d2dshare {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + uniform() * (b - a); }

    /// Normal sample via Box-Muller; consumes exactly two engine draws.
    double normal(double mean, double sigma) {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return mean + sigma * z;
    }

    /// Raw 64-bit engine draw (stream-derivation material).
    std::uint64_t bits() { return gen_(); }

    /// Independent child seed for (seed, stream) — splitmix64 finalizer.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace d2dshare
