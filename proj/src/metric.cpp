#include "s3geo/metric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace s3geo {

namespace {

// Ambient directions of the frame at the identity (1,0):
// X_1 = right mult by (i,0), X_2 = right mult by (0,i), X_3 = right mult by (0,1).
constexpr Vec4 kFrameAtIdentity[3] = {
    Vec4{0.0, 1.0, 0.0, 0.0},
    Vec4{0.0, 0.0, 0.0, 1.0},
    Vec4{0.0, 0.0, 1.0, 0.0},
};

}  // namespace

TangentVector frame_field(int i, const UnitQuaternion& p) {
    if (i < 1 || i > 3) throw std::invalid_argument("frame_field: index must be 1, 2 or 3");
    return TangentVector(p, left_multiply_ambient(p, kFrameAtIdentity[i - 1]));
}

LieAlgebraVector frame_coefficients(const TangentVector& t) {
    const TangentVector at_id = differential_left_translate(inverse(t.base()), t);
    const Vec4& u = at_id.vector();
    return LieAlgebraVector{u[1], u[3], u[2]};
}

TangentVector tangent_at_identity(const LieAlgebraVector& a) {
    return TangentVector(UnitQuaternion::identity(), Vec4{0.0, a.a1, a.a3, a.a2});
}

HomogeneousMetric::HomogeneousMetric(double lambda1, double lambda2, double lambda3)
    : l_{lambda1, lambda2, lambda3} {
    for (double l : l_)
        if (!(l > 0.0) || !std::isfinite(l))
            throw std::invalid_argument("HomogeneousMetric: eigenvalues must be positive");
}

bool HomogeneousMetric::is_berger(double tol) const {
    return std::abs(l_[1] - 1.0) <= tol && std::abs(l_[2] - 1.0) <= tol;
}

HomogeneousMetric berger(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("berger: rho must be positive");
    return {rho * rho, 1.0, 1.0};
}

double evaluate_metric(const HomogeneousMetric& m, const TangentVector& t1,
                       const TangentVector& t2) {
    if (t1.base().distance_to(t2.base()) > 1e-9)
        throw std::invalid_argument("evaluate_metric: tangent vectors have different base points");
    const LieAlgebraVector a = frame_coefficients(t1);
    const LieAlgebraVector b = frame_coefficients(t2);
    const auto& l = m.lambdas();
    return l[0] * a.a1 * b.a1 + l[1] * a.a2 * b.a2 + l[2] * a.a3 * b.a3;
}

double volume(const HomogeneousMetric& m) {
    const auto& l = m.lambdas();
    return std::sqrt(l[0] * l[1] * l[2]) * 2.0 * std::numbers::pi * std::numbers::pi;
}

std::array<double, 3> structure_constants(const HomogeneousMetric& m) {
    const auto& l = m.lambdas();
    const double root = std::sqrt(l[0] * l[1] * l[2]);
    return {2.0 * l[0] / root, 2.0 * l[1] / root, 2.0 * l[2] / root};
}

RicciSpectrum ricci_eigenvalues(const HomogeneousMetric& m) {
    const auto c = structure_constants(m);
    const double half_sum = 0.5 * (c[0] + c[1] + c[2]);
    const double mu1 = half_sum - c[0];
    const double mu2 = half_sum - c[1];
    const double mu3 = half_sum - c[2];
    return RicciSpectrum{2.0 * mu2 * mu3, 2.0 * mu3 * mu1, 2.0 * mu1 * mu2};
}

double scalar_curvature(const HomogeneousMetric& m) { return ricci_eigenvalues(m).scalar(); }

FirstFundamental first_fundamental(const HomogeneousMetric& m, const UnitQuaternion& p,
                                   const Vec4& vs, const Vec4& vt) {
    const UnitQuaternion pinv = inverse(p);
    const Vec4 us = left_multiply_ambient(pinv, vs);
    const Vec4 ut = left_multiply_ambient(pinv, vt);
    const auto& l = m.lambdas();
    return FirstFundamental{
        l[0] * us[1] * us[1] + l[1] * us[3] * us[3] + l[2] * us[2] * us[2],
        l[0] * us[1] * ut[1] + l[1] * us[3] * ut[3] + l[2] * us[2] * ut[2],
        l[0] * ut[1] * ut[1] + l[1] * ut[3] * ut[3] + l[2] * ut[2] * ut[2],
    };
}

}  // namespace s3geo
