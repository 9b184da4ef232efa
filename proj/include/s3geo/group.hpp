#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace s3geo {

using Vec4 = std::array<double, 4>;

inline double dot4(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm4(const Vec4& a) { return std::sqrt(dot4(a, a)); }

inline Vec4 sub4(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

/// S^3 as the unit quaternions (z, w) in C^2, |z|^2 + |w|^2 = 1.
/// Ambient coordinate order is (Re z, Im z, Re w, Im w), so the north pole
/// (0,0,1,0) is z = 0, w = 1. Construction renormalizes, keeping the unit
/// invariant within 1e-12 after every operation.
class UnitQuaternion {
public:
    UnitQuaternion() : x_{1.0, 0.0, 0.0, 0.0} {}

    UnitQuaternion(double x0, double x1, double x2, double x3) : x_{x0, x1, x2, x3} {
        normalize();
    }

    UnitQuaternion(std::complex<double> z, std::complex<double> w)
        : x_{z.real(), z.imag(), w.real(), w.imag()} {
        normalize();
    }

    explicit UnitQuaternion(const Vec4& x) : x_(x) { normalize(); }

    static UnitQuaternion identity() { return UnitQuaternion(); }
    static UnitQuaternion minus_identity() { return UnitQuaternion(-1.0, 0.0, 0.0, 0.0); }

    std::complex<double> z() const { return {x_[0], x_[1]}; }
    std::complex<double> w() const { return {x_[2], x_[3]}; }
    const Vec4& ambient() const { return x_; }
    double coord(int i) const { return x_[static_cast<std::size_t>(i)]; }

    /// Euclidean distance in the ambient R^4.
    double distance_to(const UnitQuaternion& o) const { return norm4(sub4(x_, o.x_)); }

    bool operator==(const UnitQuaternion&) const = default;

private:
    void normalize() {
        const double n = norm4(x_);
        if (!(n > 1e-8)) throw std::invalid_argument("UnitQuaternion: vector too close to zero");
        const double inv = 1.0 / n;
        for (double& c : x_) c *= inv;
    }

    Vec4 x_;
};

/// Left multiplication by a, applied to an arbitrary ambient 4-vector.
/// The group law is real-linear in its second argument, so this single map
/// serves both for translating points and for pushing tangent vectors forward.
inline Vec4 left_multiply_ambient(const UnitQuaternion& a, const Vec4& b) {
    const Vec4& p = a.ambient();
    return {p[0] * b[0] - p[1] * b[1] - p[2] * b[2] - p[3] * b[3],
            p[0] * b[1] + p[1] * b[0] - p[2] * b[3] + p[3] * b[2],
            p[2] * b[0] - p[3] * b[1] + p[0] * b[2] + p[1] * b[3],
            p[2] * b[1] + p[3] * b[0] + p[0] * b[3] - p[1] * b[2]};
}

/// Group product (z,w)*(u,v) = (zu - conj(w)v, wu + conj(z)v).
inline UnitQuaternion multiply(const UnitQuaternion& p, const UnitQuaternion& q) {
    return UnitQuaternion(left_multiply_ambient(p, q.ambient()));
}

inline UnitQuaternion inverse(const UnitQuaternion& p) {
    const Vec4& x = p.ambient();
    return UnitQuaternion(x[0], -x[1], -x[2], -x[3]);
}

inline UnitQuaternion left_translate(const UnitQuaternion& a, const UnitQuaternion& p) {
    return multiply(a, p);
}

inline UnitQuaternion right_translate(const UnitQuaternion& p, const UnitQuaternion& a) {
    return multiply(p, a);
}

/// (z,w) -> (-z,-w), the left translation by (-1,0).
inline UnitQuaternion antipode(const UnitQuaternion& p) {
    return multiply(UnitQuaternion::minus_identity(), p);
}

/// Tangent vector to S^3, stored as an ambient 4-vector orthogonal to its
/// base point (within 1e-10).
class TangentVector {
public:
    TangentVector(const UnitQuaternion& base, const Vec4& v) : base_(base), v_(v) {
        if (std::abs(dot4(v_, base_.ambient())) > 1e-10 * std::max(1.0, norm4(v_)))
            throw std::invalid_argument("TangentVector: not orthogonal to base point");
    }

    /// Build a tangent vector by projecting out the normal component of raw.
    static TangentVector projected(const UnitQuaternion& base, const Vec4& raw) {
        const double c = dot4(raw, base.ambient());
        Vec4 v = raw;
        for (std::size_t i = 0; i < 4; ++i) v[i] -= c * base.ambient()[i];
        return TangentVector(base, v);
    }

    const UnitQuaternion& base() const { return base_; }
    const Vec4& vector() const { return v_; }
    double norm() const { return norm4(v_); }

private:
    UnitQuaternion base_;
    Vec4 v_;
};

/// Pushforward of t under left translation by a; an ambient isometry, so
/// the Euclidean norm of the vector part is preserved.
inline TangentVector differential_left_translate(const UnitQuaternion& a, const TangentVector& t) {
    return TangentVector(multiply(a, t.base()), left_multiply_ambient(a, t.vector()));
}

/// Coefficients in the standard left-invariant frame at the identity.
struct LieAlgebraVector {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

}  // namespace s3geo
