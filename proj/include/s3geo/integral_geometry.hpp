#pragma once

#include <cstdint>

#include "s3geo/fields.hpp"
#include "s3geo/metric.hpp"
#include "s3geo/surfaces.hpp"

namespace s3geo {

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the integral of f against dV_m: volume(m) times
/// the mean of f over Haar-uniform samples. Unbiased because dV_m is a
/// constant multiple of the round measure.
VolumeEstimate integrate_volume_estimate(const HomogeneousMetric& m, const ScalarField& f,
                                         std::uint64_t n, std::uint64_t seed);

double integrate_volume(const HomogeneousMetric& m, const ScalarField& f, std::uint64_t n,
                        std::uint64_t seed);

/// Two-sided Monte Carlo comparison. rel_error uses a 1e-12 floor on the
/// reference magnitude; std_error combines both sides in quadrature.
struct MonteCarloReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_error = 0.0;
    double std_error = 0.0;
    double lhs_std_error = 0.0;
    double rhs_std_error = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;

    bool within_sigma(double k) const;
};

MonteCarloReport make_report(double lhs, double lhs_se, double rhs, double rhs_se,
                             std::uint64_t n, std::uint64_t seed);

struct AveragingOptions {
    /// Evaluate the surface averages through the change-of-variables identity
    /// (f integrated over Sigma_0 against the translated argument) instead of
    /// quadrature over the translated chart. Same estimator, much cheaper;
    /// the two routes are verified to agree elsewhere.
    bool fast_pullback = false;
    /// Reuse the translation samples as the volume samples instead of an
    /// independent stream.
    bool shared_seed = false;
};

/// Checks the averaging identity: the dV_m-weighted mean over translations
/// (a,b) of the area-normalized average of f over L_(a,b)(reference) against
/// the volume integral of f. Both sides are reported with standard errors;
/// nothing is hidden in the comparison.
MonteCarloReport verify_averaging_formula(const HomogeneousMetric& m, const ScalarField& f,
                                          const ParametrizedSphere& reference, std::uint64_t n,
                                          const SurfaceGrid& grid, std::uint64_t seed,
                                          const AveragingOptions& options = {});

/// Checks right-translation invariance of dV_m: the volume integral of f
/// against that of p -> f(p * q), with the same sample count on both sides.
MonteCarloReport verify_unimodularity(const HomogeneousMetric& m, const ScalarField& f,
                                      const UnitQuaternion& q, std::uint64_t n,
                                      std::uint64_t seed, bool shared_seed = false);

/// Runs the two orders of iterated averaging over shared samples: translate
/// spheres then average, versus averaging the translated volume integrals
/// over the reference chart. Agreement is limited only by quadrature error.
MonteCarloReport verify_fubini_exchange(const HomogeneousMetric& m, const ScalarField& f,
                                        const ParametrizedSphere& reference, std::uint64_t n,
                                        const SurfaceGrid& grid, std::uint64_t seed);

}  // namespace s3geo
