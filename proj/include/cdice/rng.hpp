#pragma once

#include <cmath>
#include <cstdint>

#include "cdice/volume.hpp"

namespace cdice::sim {

/// splitmix64. Tiny, fully specified, identical output on every platform.
/// Each simulation trial owns one instance, seeded from (seed, trial index)
/// only, so results do not depend on execution order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Unit vector uniform on the sphere: a normalized Gaussian triple
/// (Box-Muller), redrawing on a degenerate norm.
inline Vec3 random_unit_direction(SplitMix64& rng) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (;;) {
        const double u1 = 1.0 - rng.next_unit();  // (0, 1], keeps the log finite
        const double a1 = two_pi * rng.next_unit();
        const double u2 = 1.0 - rng.next_unit();
        const double a2 = two_pi * rng.next_unit();
        const double r1 = std::sqrt(-2.0 * std::log(u1));
        const double gx = r1 * std::cos(a1);
        const double gy = r1 * std::sin(a1);
        const double gz = std::sqrt(-2.0 * std::log(u2)) * std::cos(a2);
        const double norm2 = gx * gx + gy * gy + gz * gz;
        if (norm2 < 1e-18) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        return {gx * inv, gy * inv, gz * inv};
    }
}

}  // namespace cdice::sim
