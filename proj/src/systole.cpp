#include "s3geo/systole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "s3geo/integral_geometry.hpp"
#include "s3geo/parallel.hpp"
#include "s3geo/quadrature.hpp"
#include "s3geo/rng.hpp"

namespace s3geo {

namespace {

constexpr double kPi = std::numbers::pi;

// Common core of the area and systole-curve formulas:
//   I(rho) = integral_0^pi sin s sqrt(cos^2 s + rho^2 sin^2 s) ds.
// The Sigma_0 area under g_rho is 2 pi I(rho) and F(rho) = rho^{-2/3} I(rho).
AdaptiveResult area_integral(double rho, double abs_tol) {
    const double rho2 = rho * rho;
    return adaptive_integrate(
        [rho2](double s) {
            const double sin_s = std::sin(s);
            const double cos_s = std::cos(s);
            return sin_s * std::sqrt(cos_s * cos_s + rho2 * sin_s * sin_s);
        },
        0.0, kPi, abs_tol, 1e-13);
}

double area_integral_or_throw(double rho, double abs_tol) {
    const AdaptiveResult r = area_integral(rho, abs_tol);
    if (!r.converged)
        throw QuadratureError("area integral did not converge at rho = " + std::to_string(rho));
    return r.value;
}

void require_positive_rho(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("rho must be positive and finite");
}

}  // namespace

double berger_minimal_area(double rho, double tol) {
    require_positive_rho(rho);
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    return 2.0 * kPi * area_integral_or_throw(rho, tol / (2.0 * kPi));
}

double two_systole_rp3(double rho, double tol) { return 0.5 * berger_minimal_area(rho, tol); }

double berger_F(double rho, double tol) {
    require_positive_rho(rho);
    return std::pow(rho, -2.0 / 3.0) * area_integral_or_throw(rho, tol);
}

FDerivatives F_derivatives_at_one(double h, int richardson_levels, double quad_tol) {
    if (!(h > 0.0 && h <= 0.1))
        throw std::invalid_argument("F_derivatives_at_one: need 0 < h <= 0.1");
    const auto curve = [quad_tol](double rho) { return berger_F(rho, quad_tol); };
    const DerivativeEstimate d1 = richardson_derivative(curve, 1.0, h, richardson_levels, 1);
    const DerivativeEstimate d2 = richardson_derivative(curve, 1.0, h, richardson_levels, 2);
    // Quadrature noise propagated through the smallest stencil step.
    const double min_step = h / std::pow(2.0, richardson_levels - 1);
    FDerivatives out;
    out.first = d1.value;
    out.second = d2.value;
    out.first_error = d1.error_estimate + quad_tol / min_step;
    out.second_error = d2.error_estimate + 4.0 * quad_tol / (min_step * min_step);
    return out;
}

std::vector<SystoleCurvePoint> systole_curve(double rho_min, double rho_max, int n_points,
                                             Spacing spacing, double tol) {
    if (!(rho_min > 0.0) || !(rho_max >= rho_min))
        throw std::invalid_argument("systole_curve: need 0 < rho_min <= rho_max");
    if (n_points < 1) throw std::invalid_argument("systole_curve: need at least one point");

    std::vector<double> rhos(static_cast<std::size_t>(n_points));
    if (n_points == 1) {
        rhos[0] = rho_min;
    } else {
        for (int i = 0; i < n_points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
            rhos[static_cast<std::size_t>(i)] =
                spacing == Spacing::linear
                    ? rho_min + t * (rho_max - rho_min)
                    : rho_min * std::pow(rho_max / rho_min, t);
        }
    }

    std::vector<SystoleCurvePoint> points(rhos.size());
    parallel_for(rhos.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double rho = rhos[i];
            const AdaptiveResult integral = area_integral(rho, tol);
            SystoleCurvePoint& pt = points[i];
            pt.rho = rho;
            pt.area_sigma0 = 2.0 * kPi * integral.value;
            pt.volume = 2.0 * kPi * kPi * rho;
            pt.F = std::pow(rho, -2.0 / 3.0) * integral.value;
            pt.normalized_systole = pt.F / std::cbrt(kPi);
            pt.converged = integral.converged;
        }
    });
    return points;
}

namespace {

UnitQuaternion axis_step(int axis, double t) {
    Vec4 q{std::cos(t), 0.0, 0.0, 0.0};
    q[static_cast<std::size_t>(axis)] = std::sin(t);
    return UnitQuaternion(q);
}

}  // namespace

ConformalExperimentReport conformal_experiment(const HomogeneousMetric& base_metric,
                                               const ConformalFactor& phi,
                                               const ConformalSearchConfig& config,
                                               const SurfaceGrid& grid, double equality_tol,
                                               std::uint64_t seed) {
    if (!base_metric.is_berger(1e-9))
        throw std::invalid_argument(
            "conformal_experiment: base metric must be a Berger metric (lambda2 = lambda3 = 1)");
    if (config.translation_samples < 1)
        throw std::invalid_argument("conformal_experiment: need at least one translation sample");

    const QuadratureTable table = make_quadrature_table(grid);
    const ParametrizedSphere sigma0 = ParametrizedSphere::sigma0();

    const auto weighted_area = [&](const UnitQuaternion& a) {
        const ParametrizedSphere sphere = translate_sphere(a, sigma0);
        return integrate_over_sphere(sphere, base_metric, table, nullptr, &phi).area;
    };

    // Coarse sweep over Haar-sampled translations.
    const std::uint64_t n = config.translation_samples;
    std::vector<double> areas(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) areas[i] = weighted_area(haar_sample_at(seed, i));
    });
    std::size_t best_index = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (areas[i] < areas[best_index]) best_index = i;
    UnitQuaternion best = haar_sample_at(seed, best_index);
    double best_area = areas[best_index];

    // Compass search on the translation group.
    bool converged = true;
    if (config.refine) {
        double step = 0.15;
        int iterations = 0;
        const int max_iterations = 400;
        while (step > 1e-3) {
            bool improved = false;
            for (int axis = 1; axis <= 3 && !improved; ++axis) {
                for (double sign : {1.0, -1.0}) {
                    const UnitQuaternion candidate = multiply(best, axis_step(axis, sign * step));
                    const double candidate_area = weighted_area(candidate);
                    if (candidate_area < best_area) {
                        best = candidate;
                        best_area = candidate_area;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
            if (++iterations >= max_iterations) {
                converged = false;
                break;
            }
        }
    }

    // Conformal volume vol(S^3, phi g) = integral of phi^{3/2} dV_g.
    const ScalarField phi32{phi.name + "^(3/2)", [&phi](const UnitQuaternion& p) {
                                return std::pow(phi(p), 1.5);
                            }};
    const VolumeEstimate vol_conf = integrate_volume_estimate(
        base_metric, phi32, config.volume_samples, mix_seed(seed, 0x517CC1B727220A95ULL));

    const double w = integrate_over_sphere(sigma0, base_metric, table).area;
    const double vol_base = volume(base_metric);

    ConformalExperimentReport report;
    report.min_area = best_area;
    report.reference_area = w;
    report.conformal_volume = vol_conf.value;
    report.conformal_volume_std_error = vol_conf.std_error;
    report.bound = w * std::pow(vol_conf.value / vol_base, 2.0 / 3.0);
    report.ratio = report.min_area / report.bound;
    report.equality = std::abs(report.ratio - 1.0) <= equality_tol;
    report.optimizer_converged = converged;
    report.best_translation = best;
    report.seed = seed;
    return report;
}

}  // namespace s3geo
