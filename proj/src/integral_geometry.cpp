#include "s3geo/integral_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "s3geo/parallel.hpp"
#include "s3geo/quadrature.hpp"
#include "s3geo/rng.hpp"

namespace s3geo {

namespace {

constexpr std::uint64_t kRhsStream = 0x6A09E667F3BCC909ULL;

// Reference-chart nodes with their area-element weights; the ingredients of
// the change-of-variables form of a surface integral over a translate.
struct ReferenceNodes {
    std::vector<UnitQuaternion> points;
    std::vector<double> weights;  // sum to the (metric) area of the reference
    double area = 0.0;
};

ReferenceNodes make_reference_nodes(const ParametrizedSphere& reference,
                                    const HomogeneousMetric& m, const QuadratureTable& table) {
    ReferenceNodes nodes;
    const std::size_t ns = table.s_nodes.size();
    const std::size_t nt = table.cos_theta.size();
    nodes.points.reserve(ns * nt);
    nodes.weights.reserve(ns * nt);
    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(nt);
            const auto jet = reference.chart_jet(table.s_nodes[i], theta);
            const UnitQuaternion p(jet.point);
            const FirstFundamental ff = first_fundamental(m, p, jet.d_s, jet.d_theta);
            const double ae = std::sqrt(std::max(0.0, ff.E * ff.G - ff.F * ff.F));
            nodes.points.push_back(p);
            nodes.weights.push_back(table.s_weights[i] * table.theta_weight * ae);
        }
    }
    nodes.area = pairwise_sum(nodes.weights);
    return nodes;
}

}  // namespace

VolumeEstimate integrate_volume_estimate(const HomogeneousMetric& m, const ScalarField& f,
                                         std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("integrate_volume: need at least one sample");
    std::vector<double> values(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) values[i] = f(haar_sample_at(seed, i));
    });
    const MeanStdError ms = mean_and_std_error(values);
    const double vol = volume(m);
    return VolumeEstimate{vol * ms.mean, vol * ms.std_error, n, seed};
}

double integrate_volume(const HomogeneousMetric& m, const ScalarField& f, std::uint64_t n,
                        std::uint64_t seed) {
    return integrate_volume_estimate(m, f, n, seed).value;
}

bool MonteCarloReport::within_sigma(double k) const {
    return std::abs(lhs - rhs) <= k * std_error + 1e-12;
}

MonteCarloReport make_report(double lhs, double lhs_se, double rhs, double rhs_se,
                             std::uint64_t n, std::uint64_t seed) {
    MonteCarloReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.lhs_std_error = lhs_se;
    r.rhs_std_error = rhs_se;
    r.std_error = std::hypot(lhs_se, rhs_se);
    r.rel_error = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-12);
    r.n = n;
    r.seed = seed;
    return r;
}

MonteCarloReport verify_averaging_formula(const HomogeneousMetric& m, const ScalarField& f,
                                          const ParametrizedSphere& reference, std::uint64_t n,
                                          const SurfaceGrid& grid, std::uint64_t seed,
                                          const AveragingOptions& options) {
    if (n < 1000) throw std::invalid_argument("verify_averaging_formula: need n >= 1000");
    const QuadratureTable table = make_quadrature_table(grid);

    std::vector<double> averages(n);
    if (options.fast_pullback) {
        const ReferenceNodes nodes = make_reference_nodes(reference, m, table);
        const std::size_t count = nodes.points.size();
        parallel_for(n, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const UnitQuaternion a = haar_sample_at(seed, i);
                double acc = 0.0;
                for (std::size_t k = 0; k < count; ++k)
                    acc += nodes.weights[k] * f(multiply(a, nodes.points[k]));
                averages[i] = acc / nodes.area;
            }
        });
    } else {
        parallel_for(n, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const UnitQuaternion a = haar_sample_at(seed, i);
                const ParametrizedSphere sphere = translate_sphere(a, reference);
                const SurfaceIntegrals ints = integrate_over_sphere(sphere, m, table, &f);
                averages[i] = ints.f_integral / ints.area;
            }
        });
    }

    const double vol = volume(m);
    const MeanStdError lhs = mean_and_std_error(averages);

    const std::uint64_t rhs_seed = options.shared_seed ? seed : mix_seed(seed, kRhsStream);
    const VolumeEstimate rhs = integrate_volume_estimate(m, f, n, rhs_seed);

    return make_report(vol * lhs.mean, vol * lhs.std_error, rhs.value, rhs.std_error, n, seed);
}

MonteCarloReport verify_unimodularity(const HomogeneousMetric& m, const ScalarField& f,
                                      const UnitQuaternion& q, std::uint64_t n,
                                      std::uint64_t seed, bool shared_seed) {
    const VolumeEstimate lhs = integrate_volume_estimate(m, f, n, seed);
    const ScalarField translated{
        f.name + " . R_q", [&f, q](const UnitQuaternion& p) { return f(right_translate(p, q)); }};
    const std::uint64_t rhs_seed = shared_seed ? seed : mix_seed(seed, kRhsStream);
    const VolumeEstimate rhs = integrate_volume_estimate(m, translated, n, rhs_seed);
    return make_report(lhs.value, lhs.std_error, rhs.value, rhs.std_error, n, seed);
}

MonteCarloReport verify_fubini_exchange(const HomogeneousMetric& m, const ScalarField& f,
                                        const ParametrizedSphere& reference, std::uint64_t n,
                                        const SurfaceGrid& grid, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("verify_fubini_exchange: need at least one sample");
    const QuadratureTable table = make_quadrature_table(grid);
    const ReferenceNodes nodes = make_reference_nodes(reference, m, table);
    const std::size_t count = nodes.points.size();
    const double vol = volume(m);

    std::vector<UnitQuaternion> samples(n, UnitQuaternion::identity());
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) samples[i] = haar_sample_at(seed, i);
    });

    // Order one: translate the sphere, average over it, then average over
    // translations (full quadrature on each translated chart).
    std::vector<double> averages(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const ParametrizedSphere sphere = translate_sphere(samples[i], reference);
            const SurfaceIntegrals ints = integrate_over_sphere(sphere, m, table, &f);
            averages[i] = ints.f_integral / ints.area;
        }
    });
    const MeanStdError order_one = mean_and_std_error(averages);

    // Order two: for each reference node, the volume integral of the
    // translated argument over the same samples, then the area-normalized
    // node average.
    std::vector<double> node_means(count);
    parallel_for(count, [&](std::size_t begin, std::size_t end) {
        std::vector<double> inner(n);
        for (std::size_t k = begin; k < end; ++k) {
            for (std::uint64_t i = 0; i < n; ++i)
                inner[i] = f(multiply(samples[i], nodes.points[k]));
            node_means[k] = mean_and_std_error(inner).mean;
        }
    });
    std::vector<double> weighted(count);
    for (std::size_t k = 0; k < count; ++k) weighted[k] = nodes.weights[k] * node_means[k];
    const double order_two = pairwise_sum(weighted) / nodes.area;

    return make_report(vol * order_one.mean, vol * order_one.std_error, vol * order_two,
                       vol * order_one.std_error, n, seed);
}

}  // namespace s3geo
