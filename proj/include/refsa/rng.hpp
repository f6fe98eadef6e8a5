#pragma once

#include <cmath>
#include <cstdint>

namespace refsa {

// splitmix64 mixing function. All randomness in the simulator flows through
// this generator so runs are reproducible bit-for-bit regardless of the
// standard library in use.
constexpr std::uint64_t splitmix64_mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from a master seed and a tag.
// Distinct tags give statistically independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    return splitmix64_mix(master + 0x9E3779B97F4A7C15ull * (tag + 1));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag_a,
                                    std::uint64_t tag_b) {
    return derive_seed(derive_seed(master, tag_a), tag_b);
}

// Small deterministic PRNG (splitmix64 sequence). Uniform and Gaussian draws
// are hand-rolled because std::normal_distribution is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_mix(state_);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double next_gaussian() {
        const double u1 = 1.0 - next_double(); // (0, 1], keeps log finite
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Gaussian with the given sigma, redrawn until it lies in [lo, hi].
    double next_truncated_gaussian(double mean, double sigma, double lo, double hi) {
        if (sigma <= 0.0)
            return mean;
        for (;;) {
            const double x = mean + sigma * next_gaussian();
            if (x >= lo && x <= hi)
                return x;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace refsa
