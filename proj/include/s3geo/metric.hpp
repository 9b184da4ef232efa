#pragma once

#include <array>

#include "s3geo/group.hpp"

namespace s3geo {

/// The standard left-invariant frame X_1, X_2, X_3: right quaternion
/// multiplication of the base point by the imaginary units, ordered so that
/// X_1 is the Hopf field (X_1 at (z,w) equals (iz,iw)) and the Milnor
/// structure constants come out positive. At the identity:
///   X_1 = (0,1,0,0), X_2 = (0,0,0,1), X_3 = (0,0,1,0).
TangentVector frame_field(int i, const UnitQuaternion& p);

/// Coefficients of t in the standard frame, obtained by pulling t back to
/// the identity with the differential of left translation by base^{-1}.
LieAlgebraVector frame_coefficients(const TangentVector& t);

/// Tangent vector at the identity with the given frame coefficients.
TangentVector tangent_at_identity(const LieAlgebraVector& a);

struct RicciSpectrum {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;

    double scalar() const { return r1 + r2 + r3; }
    bool positive() const { return r1 > 0.0 && r2 > 0.0 && r3 > 0.0; }
};

/// Left-invariant metric on S^3, diagonal in the standard frame:
/// g(X_i, X_j) = lambda_i delta_ij with lambda_i > 0. The Berger metric g_rho
/// is lambda = (rho^2, 1, 1).
class HomogeneousMetric {
public:
    HomogeneousMetric(double lambda1, double lambda2, double lambda3);

    static HomogeneousMetric round() { return {1.0, 1.0, 1.0}; }

    double lambda1() const { return l_[0]; }
    double lambda2() const { return l_[1]; }
    double lambda3() const { return l_[2]; }
    const std::array<double, 3>& lambdas() const { return l_; }

    /// True when lambda_2 = lambda_3 = 1, i.e. the metric is g_rho with
    /// rho = sqrt(lambda_1).
    bool is_berger(double tol = 1e-12) const;

private:
    std::array<double, 3> l_;
};

/// Berger metric g_rho(X,Y) = <X,Y> + (rho^2 - 1)<X,xi><Y,xi> with xi the
/// Hopf field; realized as lambda = (rho^2, 1, 1).
HomogeneousMetric berger(double rho);

/// g(t1, t2); both vectors must share a base point.
double evaluate_metric(const HomogeneousMetric& m, const TangentVector& t1,
                       const TangentVector& t2);

/// Total volume sqrt(lambda1 lambda2 lambda3) * 2 pi^2.
double volume(const HomogeneousMetric& m);

/// Milnor structure constants c_i = 2 lambda_i / sqrt(lambda1 lambda2 lambda3)
/// of the orthonormal frame E_i = X_i / sqrt(lambda_i).
std::array<double, 3> structure_constants(const HomogeneousMetric& m);

/// Principal Ricci curvatures in the frame E_1, E_2, E_3 (constant over S^3):
/// r_i = 2 mu_j mu_k with mu_i = (c1 + c2 + c3)/2 - c_i.
RicciSpectrum ricci_eigenvalues(const HomogeneousMetric& m);

double scalar_curvature(const HomogeneousMetric& m);

/// First fundamental form entries of a surface patch: E = g(vs,vs),
/// F = g(vs,vt), G = g(vt,vt) for two (raw) tangent 4-vectors at p.
/// Fast path shared by the area quadratures.
struct FirstFundamental {
    double E, F, G;
};

FirstFundamental first_fundamental(const HomogeneousMetric& m, const UnitQuaternion& p,
                                   const Vec4& vs, const Vec4& vt);

}  // namespace s3geo
