#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace zosga {

// Counter-based seed derivation (splitmix64 finalizer). derive_seed(m, k) is
// the k-th output of a splitmix64 stream seeded with m, so adding simulations
// to an ensemble never perturbs the seeds of earlier ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t x = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic generator: mt19937_64 engine with hand-rolled transforms, so
// streams are bit-reproducible across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on the open interval (0, 1)
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal via Box-Muller (two uniforms per draw, no caching)
    double gaussian() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // circularly-symmetric complex normal CN(0,1): real and imaginary parts
    // i.i.d. N(0, 1/2), unit total variance per entry
    std::complex<double> cgaussian() {
        const double r = std::sqrt(-std::log(uniform01()));
        const double phi = 2.0 * std::numbers::pi * uniform01();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace zosga
