#pragma once

#include <vector>

#include "s3geo/fields.hpp"
#include "s3geo/group.hpp"
#include "s3geo/metric.hpp"

namespace s3geo {

/// Product quadrature resolution: Gauss-Legendre with n_s nodes in s on
/// (0, pi) composed with the n_theta-point trapezoid rule on the periodic
/// theta circle. Both counts must be >= 8.
struct SurfaceGrid {
    int n_s = 64;
    int n_theta = 64;
};

/// Precomputed nodes, weights and trigonometric tables for a SurfaceGrid.
/// Build once and reuse when integrating over many spheres.
struct QuadratureTable {
    std::vector<double> s_nodes;
    std::vector<double> s_weights;  // includes the (0,pi) interval scaling
    std::vector<double> sin_s, cos_s;
    std::vector<double> cos_theta, sin_theta;
    double theta_weight = 0.0;
};

QuadratureTable make_quadrature_table(const SurfaceGrid& grid);

/// A left translate of the horizontal two-sphere Sigma_0 = {(z,w): Im w = 0},
/// parametrized by polar coordinates based at the (translated) north pole:
///   (s, theta) in (0,pi) x [0,2pi)  ->  L_a(sin s e^{i theta}, cos s).
class ParametrizedSphere {
public:
    ParametrizedSphere() = default;
    explicit ParametrizedSphere(const UnitQuaternion& translation) : translation_(translation) {}

    static ParametrizedSphere sigma0() { return ParametrizedSphere(); }

    const UnitQuaternion& translation() const { return translation_; }

    UnitQuaternion chart(double s, double theta) const;

    /// Chart point with its two analytic partial derivatives, all pushed
    /// forward by the translation.
    struct Jet {
        Vec4 point;
        Vec4 d_s;
        Vec4 d_theta;
    };
    Jet chart_jet(double s, double theta) const;

private:
    UnitQuaternion translation_;  // defaults to the identity
};

ParametrizedSphere translate_sphere(const UnitQuaternion& a, const ParametrizedSphere& sphere);

/// sqrt(det) of the pullback of m under the chart at (s, theta); requires
/// 0 < s < pi.
double area_element(const ParametrizedSphere& sphere, const HomogeneousMetric& m, double s,
                    double theta);

/// One pass over the product grid: area = integral of (phi) dA and, when f is
/// given, the weighted integral of f at the same nodes.
struct SurfaceIntegrals {
    double area = 0.0;
    double f_integral = 0.0;
};

SurfaceIntegrals integrate_over_sphere(const ParametrizedSphere& sphere,
                                       const HomogeneousMetric& m, const QuadratureTable& table,
                                       const ScalarField* f = nullptr,
                                       const ConformalFactor* phi = nullptr);

/// Area of the sphere under m, optionally conformally weighted by phi
/// (area of the metric phi*m restricted to the surface).
double area(const ParametrizedSphere& sphere, const HomogeneousMetric& m, const SurfaceGrid& grid,
            const ConformalFactor* phi = nullptr);

/// Same computation run at the grid and at the node-doubled grid, for
/// convergence reporting.
struct AreaRefinement {
    double value = 0.0;          // node-doubled result
    double coarse_value = 0.0;   // requested grid
    double relative_delta = 0.0;
    bool converged = false;
};

AreaRefinement area_refined(const ParametrizedSphere& sphere, const HomogeneousMetric& m,
                            const SurfaceGrid& grid, double rel_tol,
                            const ConformalFactor* phi = nullptr);

/// Area-normalized mean of f over the sphere.
double surface_average(const ParametrizedSphere& sphere, const HomogeneousMetric& m,
                       const SurfaceGrid& grid, const ScalarField& f);

/// Symmetrized sample Hausdorff distance between the two spheres, measured in
/// the ambient Euclidean metric on a uniform chart grid (poles included).
double sphere_set_distance(const ParametrizedSphere& a, const ParametrizedSphere& b,
                           const SurfaceGrid& grid);

/// Chordal sampling resolution of sphere_set_distance on the given grid;
/// distances below this are indistinguishable from zero.
double sphere_distance_mesh(const SurfaceGrid& grid);

}  // namespace s3geo
