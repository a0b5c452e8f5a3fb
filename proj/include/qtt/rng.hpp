// rng.hpp: counter-based SplitMix64 streams with Box-Muller normals
//
// Output k of stream (seed, stream) is mix(key + (k + 1) * gamma), with
// key = mix(seed ^ mix(stream + gamma)). Any sample is reproducible from
// (seed, stream, k) alone, so parallel sweeps draw the same numbers in any order.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace qtt {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(splitmix64_mix(seed ^ splitmix64_mix(stream + kGoldenGamma))) {}

    std::uint64_t next_u64() noexcept { return splitmix64_mix(key_ + (++counter_) * kGoldenGamma); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal; each call consumes two counters.
    double normal() noexcept {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Standard complex normal: real and imaginary parts N(0, 1/2).
    std::complex<double> complex_normal() noexcept {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

inline constexpr const char* kRngIdentity = "splitmix64-counter/box-muller v1";

}  // namespace qtt
