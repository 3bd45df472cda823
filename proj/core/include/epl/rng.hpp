#pragma once

#include <cmath>
#include <cstdint>

namespace epl {

// SplitMix64 (Steele, Lea & Vigna; public domain reference algorithm).
// Chosen because its output is reproducible bit-for-bit from a seed on any
// platform and independent substreams can be derived deterministically.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1): rejects the (probability 2^-53) exact zero.
    double uniform01_open() {
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return u;
    }

    double exponential(double rate) {
        return -std::log1p(-uniform01()) / rate;
    }

    // Deterministic independent substream k of this generator's seed; used
    // to give parallelizable simulations per-trial generators.
    SplitMix64 substream(std::uint64_t k) const {
        std::uint64_t z = state_ ^ (0xBF58476D1CE4E5B9ull * (k + 1));
        z = (z ^ (z >> 30)) * 0x94D049BB133111EBull;
        return SplitMix64(z ^ (z >> 31));
    }

    std::uint64_t poisson(double lambda) {
        std::uint64_t n = 0;
        while (lambda > 20.0) {
            n += poisson_small(20.0);
            lambda -= 20.0;
        }
        return n + poisson_small(lambda);
    }

    // Lindley(theta): mixture of Exp(theta) with weight theta/(1+theta) and
    // Gamma(2, theta) with weight 1/(1+theta).
    double lindley(double theta) {
        if (uniform01() < theta / (1.0 + theta))
            return exponential(theta);
        return exponential(theta) + exponential(theta);
    }

    // Zero-truncated Poisson-Lindley count: Poisson with a Lindley-mixed
    // mean, conditioned on being >= 1 by joint resampling.
    std::uint64_t zero_truncated_poisson_lindley(double theta) {
        for (;;) {
            std::uint64_t n = poisson(lindley(theta));
            if (n >= 1) return n;
        }
    }

  private:
    std::uint64_t poisson_small(double lambda) {
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    std::uint64_t state_;
};

}  // namespace epl
