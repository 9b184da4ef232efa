#include "s3geo/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "s3geo/quadrature.hpp"

namespace s3geo {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const SurfaceGrid& grid) {
    if (grid.n_s < 8 || grid.n_theta < 8)
        throw std::invalid_argument("SurfaceGrid: node counts must be >= 8");
}

}  // namespace

QuadratureTable make_quadrature_table(const SurfaceGrid& grid) {
    validate(grid);
    QuadratureTable t;
    // Composite Gauss-Legendre on [0, pi/2] and [pi/2, pi]. The split keeps
    // the rule accurate for strongly squashed metrics, whose area elements
    // have complex branch points close to s = pi/2.
    const std::size_t ns = static_cast<std::size_t>(grid.n_s);
    const std::size_t first = ns / 2;
    t.s_nodes.reserve(ns);
    t.s_weights.reserve(ns);
    for (std::size_t panel = 0; panel < 2; ++panel) {
        const std::size_t count = (panel == 0) ? first : ns - first;
        const GaussLegendreRule rule = gauss_legendre(static_cast<int>(count));
        const double offset = (panel == 0) ? 0.0 : 0.5 * kPi;
        for (std::size_t i = 0; i < count; ++i) {
            t.s_nodes.push_back(offset + 0.25 * kPi * (rule.nodes[i] + 1.0));
            t.s_weights.push_back(0.25 * kPi * rule.weights[i]);
        }
    }
    t.sin_s.resize(ns);
    t.cos_s.resize(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        t.sin_s[i] = std::sin(t.s_nodes[i]);
        t.cos_s[i] = std::cos(t.s_nodes[i]);
    }
    const std::size_t nt = static_cast<std::size_t>(grid.n_theta);
    t.cos_theta.resize(nt);
    t.sin_theta.resize(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid.n_theta);
        t.cos_theta[j] = std::cos(theta);
        t.sin_theta[j] = std::sin(theta);
    }
    t.theta_weight = 2.0 * kPi / static_cast<double>(grid.n_theta);
    return t;
}

UnitQuaternion ParametrizedSphere::chart(double s, double theta) const {
    const double sin_s = std::sin(s);
    const double cos_s = std::cos(s);
    const Vec4 p0{sin_s * std::cos(theta), sin_s * std::sin(theta), cos_s, 0.0};
    return UnitQuaternion(left_multiply_ambient(translation_, p0));
}

ParametrizedSphere::Jet ParametrizedSphere::chart_jet(double s, double theta) const {
    const double sin_s = std::sin(s);
    const double cos_s = std::cos(s);
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);
    const Vec4 p0{sin_s * cos_t, sin_s * sin_t, cos_s, 0.0};
    const Vec4 ds0{cos_s * cos_t, cos_s * sin_t, -sin_s, 0.0};
    const Vec4 dt0{-sin_s * sin_t, sin_s * cos_t, 0.0, 0.0};
    return Jet{left_multiply_ambient(translation_, p0), left_multiply_ambient(translation_, ds0),
               left_multiply_ambient(translation_, dt0)};
}

ParametrizedSphere translate_sphere(const UnitQuaternion& a, const ParametrizedSphere& sphere) {
    return ParametrizedSphere(multiply(a, sphere.translation()));
}

double area_element(const ParametrizedSphere& sphere, const HomogeneousMetric& m, double s,
                    double theta) {
    if (!(s > 0.0 && s < kPi))
        throw std::invalid_argument("area_element: s must lie in the open interval (0, pi)");
    const auto jet = sphere.chart_jet(s, theta);
    const UnitQuaternion p(jet.point);
    const FirstFundamental ff = first_fundamental(m, p, jet.d_s, jet.d_theta);
    return std::sqrt(std::max(0.0, ff.E * ff.G - ff.F * ff.F));
}

SurfaceIntegrals integrate_over_sphere(const ParametrizedSphere& sphere,
                                       const HomogeneousMetric& m, const QuadratureTable& table,
                                       const ScalarField* f, const ConformalFactor* phi) {
    SurfaceIntegrals out;
    const UnitQuaternion& a = sphere.translation();
    const std::size_t ns = table.s_nodes.size();
    const std::size_t nt = table.cos_theta.size();
    for (std::size_t i = 0; i < ns; ++i) {
        const double sin_s = table.sin_s[i];
        const double cos_s = table.cos_s[i];
        double row_area = 0.0;
        double row_f = 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            const double cos_t = table.cos_theta[j];
            const double sin_t = table.sin_theta[j];
            const Vec4 p0{sin_s * cos_t, sin_s * sin_t, cos_s, 0.0};
            const Vec4 ds0{cos_s * cos_t, cos_s * sin_t, -sin_s, 0.0};
            const Vec4 dt0{-sin_s * sin_t, sin_s * cos_t, 0.0, 0.0};
            const UnitQuaternion p(left_multiply_ambient(a, p0));
            const FirstFundamental ff =
                first_fundamental(m, p, left_multiply_ambient(a, ds0),
                                  left_multiply_ambient(a, dt0));
            double weight = std::sqrt(std::max(0.0, ff.E * ff.G - ff.F * ff.F));
            if (phi != nullptr) weight *= (*phi)(p);
            row_area += weight;
            if (f != nullptr) row_f += weight * (*f)(p);
        }
        out.area += table.s_weights[i] * row_area;
        out.f_integral += table.s_weights[i] * row_f;
    }
    out.area *= table.theta_weight;
    out.f_integral *= table.theta_weight;
    return out;
}

double area(const ParametrizedSphere& sphere, const HomogeneousMetric& m, const SurfaceGrid& grid,
            const ConformalFactor* phi) {
    const QuadratureTable table = make_quadrature_table(grid);
    return integrate_over_sphere(sphere, m, table, nullptr, phi).area;
}

AreaRefinement area_refined(const ParametrizedSphere& sphere, const HomogeneousMetric& m,
                            const SurfaceGrid& grid, double rel_tol, const ConformalFactor* phi) {
    AreaRefinement r;
    r.coarse_value = area(sphere, m, grid, phi);
    r.value = area(sphere, m, SurfaceGrid{grid.n_s * 2, grid.n_theta * 2}, phi);
    r.relative_delta = std::abs(r.value - r.coarse_value) / std::max(std::abs(r.value), 1e-300);
    r.converged = r.relative_delta <= rel_tol;
    return r;
}

double surface_average(const ParametrizedSphere& sphere, const HomogeneousMetric& m,
                       const SurfaceGrid& grid, const ScalarField& f) {
    const QuadratureTable table = make_quadrature_table(grid);
    const SurfaceIntegrals ints = integrate_over_sphere(sphere, m, table, &f, nullptr);
    return ints.f_integral / ints.area;
}

namespace {

std::vector<Vec4> sample_points(const ParametrizedSphere& sphere, const SurfaceGrid& grid) {
    std::vector<Vec4> pts;
    pts.reserve(static_cast<std::size_t>(grid.n_s) * static_cast<std::size_t>(grid.n_theta) + 2);
    for (int i = 0; i < grid.n_s; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * kPi / static_cast<double>(grid.n_s);
        for (int j = 0; j < grid.n_theta; ++j) {
            const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid.n_theta);
            pts.push_back(sphere.chart(s, theta).ambient());
        }
    }
    const UnitQuaternion& a = sphere.translation();
    pts.push_back(left_multiply_ambient(a, Vec4{0.0, 0.0, 1.0, 0.0}));
    pts.push_back(left_multiply_ambient(a, Vec4{0.0, 0.0, -1.0, 0.0}));
    return pts;
}

double directed_hausdorff(const std::vector<Vec4>& from, const std::vector<Vec4>& to) {
    double worst = 0.0;
    for (const Vec4& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec4& q : to) {
            const Vec4 d = sub4(p, q);
            best = std::min(best, dot4(d, d));
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

}  // namespace

double sphere_set_distance(const ParametrizedSphere& a, const ParametrizedSphere& b,
                           const SurfaceGrid& grid) {
    validate(grid);
    const std::vector<Vec4> pa = sample_points(a, grid);
    const std::vector<Vec4> pb = sample_points(b, grid);
    return std::max(directed_hausdorff(pa, pb), directed_hausdorff(pb, pa));
}

double sphere_distance_mesh(const SurfaceGrid& grid) {
    return std::max(kPi / static_cast<double>(grid.n_s),
                    2.0 * kPi / static_cast<double>(grid.n_theta));
}

}  // namespace s3geo
