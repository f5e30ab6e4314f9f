#pragma once

#include <cmath>
#include <cstdint>

namespace fwopt {

/// Splittable counter-based generator (SplitMix64). All experiment randomness
/// flows from one seed through this type; results are identical across
/// platforms, unlike the distributions in <random>.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform in {0, ..., n-1} (n > 0). Modulo bias is irrelevant at our scales.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    /// Standard normal via Box-Muller; consumes exactly two draws.
    double normal() {
        double u1 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double exponential(double mean = 1.0) {
        double u = uniform01();
        if (u >= 1.0) u = 1.0 - 0x1.0p-53;
        return -mean * std::log1p(-u);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    /// Independent child stream.
    SplitMix64 split() { return SplitMix64(next_u64() ^ 0xA5A5A5A5A5A5A5A5ULL); }

private:
    std::uint64_t state_;
};

}  // namespace fwopt
