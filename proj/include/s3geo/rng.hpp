#pragma once

#include <cstdint>

#include "s3geo/group.hpp"

namespace s3geo {

/// Small counter-friendly PRNG (splitmix64 core). One instance per worker;
/// never shared across threads.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in (0,1]; safe as a log() argument.
    double uniform_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (pairs cached).
    double normal();

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Stateless mixing of (seed, index) into an independent substream seed.
/// Lets sample i be generated in isolation, so Monte Carlo results do not
/// depend on the number of worker threads.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform sample from the round (bi-invariant) measure on S^3: a normalized
/// 4-dimensional standard Gaussian. Resamples if the Gaussian norm is < 1e-8.
UnitQuaternion haar_sample(SplitMix64& rng);

/// Random-access variant: the i-th sample of the stream identified by seed.
UnitQuaternion haar_sample_at(std::uint64_t seed, std::uint64_t index);

}  // namespace s3geo
