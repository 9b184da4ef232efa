#pragma once

#include <cstdint>
#include <vector>

#include "s3geo/fields.hpp"
#include "s3geo/metric.hpp"
#include "s3geo/surfaces.hpp"

namespace s3geo {

/// Area of the horizontal sphere Sigma_0 under the Berger metric g_rho,
///   2 pi * integral_0^pi sqrt(sin^2 s + (rho^2 - 1) sin^4 s) ds,
/// by adaptive quadrature to absolute tolerance tol. Throws QuadratureError
/// if refinement stalls.
double berger_minimal_area(double rho, double tol = 1e-10);

/// Two-systole of (RP^3, g_rho): half the Sigma_0 area.
double two_systole_rp3(double rho, double tol = 1e-10);

/// The systole curve
///   F(rho) = rho^{-2/3} * integral_0^pi sin s sqrt(cos^2 s + rho^2 sin^2 s) ds.
/// F / cbrt(pi) is the volume-normalized two-systole of (RP^3, g_rho).
double berger_F(double rho, double tol = 1e-12);

struct FDerivatives {
    double first = 0.0;
    double second = 0.0;
    double first_error = 0.0;   // truncation + quadrature estimate
    double second_error = 0.0;
};

/// F'(1) and F''(1) by Richardson-extrapolated central differences on the
/// quadrature-evaluated curve.
FDerivatives F_derivatives_at_one(double h = 1e-2, int richardson_levels = 4,
                                  double quad_tol = 1e-13);

enum class Spacing { linear, logarithmic };

struct SystoleCurvePoint {
    double rho = 0.0;
    double area_sigma0 = 0.0;
    double volume = 0.0;   // 2 pi^2 rho
    double F = 0.0;
    double normalized_systole = 0.0;  // F / cbrt(pi)
    bool converged = true;
};

/// Evaluates the curve on a monotone grid of n_points values in
/// [rho_min, rho_max]. Per-point quadrature failures are flagged on the
/// point, not raised.
std::vector<SystoleCurvePoint> systole_curve(double rho_min, double rho_max, int n_points,
                                             Spacing spacing, double tol = 1e-10);

struct ConformalSearchConfig {
    std::uint64_t translation_samples = 10000;
    std::uint64_t volume_samples = 10000;
    bool refine = true;  // compass search from the best sampled translation
};

/// Outcome of the conformal comparison on a Berger base metric: the smallest
/// found area among translates of Sigma_0 under phi * g, against the bound
///   w(g) * vol(S^3, phi g)^{2/3} / vol(S^3, g)^{2/3},
/// with vol(S^3, phi g) estimated as the volume integral of phi^{3/2}.
/// The found minimum is an upper bound for the true one, so ratio <= 1 holds
/// up to the reported statistical error whenever the inequality does.
struct ConformalExperimentReport {
    double min_area = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool equality = false;
    bool optimizer_converged = true;
    UnitQuaternion best_translation;
    double conformal_volume = 0.0;      // estimate of vol(S^3, phi g)
    double conformal_volume_std_error = 0.0;
    double reference_area = 0.0;        // w(g)
    std::uint64_t seed = 0;
};

ConformalExperimentReport conformal_experiment(const HomogeneousMetric& base_metric,
                                               const ConformalFactor& phi,
                                               const ConformalSearchConfig& config,
                                               const SurfaceGrid& grid, double equality_tol,
                                               std::uint64_t seed);

}  // namespace s3geo
