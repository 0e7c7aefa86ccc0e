#pragma once

#include <cmath>
#include <cstdint>

namespace rmrpa {

/// SplitMix64 (Steele/Lea/Flood reference constants). Used instead of <random>
/// engines so that per-trial substreams are cheap to derive and every sampled
/// value is bit-identical across platforms and worker counts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (cosine branch).
    double next_gaussian() {
        const double u1 = next_double();             // u1 in [0, 1)
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log1p(-u1));  // log(1-u1) stays finite
        return radius * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Counter-based derivation of an independent substream from (seed, trial, tag).
/// Trials own their streams, so results do not depend on scheduling.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag) {
    const std::uint64_t c = trial * 0x9E3779B97F4A7C15ull + tag + 1;
    return SplitMix64(detail::mix64(seed ^ detail::mix64(c)));
}

}  // namespace rmrpa
