#include "s3geo/rng.hpp"

#include <cmath>
#include <numbers>

namespace s3geo {

double SplitMix64::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // murmur3 finalizer over a seed/index combination
    std::uint64_t h = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 33;
    h *= 0xC4CEB9FE1A85EC53ULL;
    h ^= h >> 33;
    return h;
}

UnitQuaternion haar_sample(SplitMix64& rng) {
    for (;;) {
        const Vec4 g = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        if (norm4(g) >= 1e-8) return UnitQuaternion(g);
    }
}

UnitQuaternion haar_sample_at(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng(mix_seed(seed, index));
    return haar_sample(rng);
}

}  // namespace s3geo
