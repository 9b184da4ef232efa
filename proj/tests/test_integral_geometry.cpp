#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "s3geo/integral_geometry.hpp"
#include "s3geo/rng.hpp"

using namespace s3geo;

namespace {
constexpr double kPi = std::numbers::pi;
const SurfaceGrid kMcGrid{16, 16};
}

TEST_CASE("integrate_volume: constants are exact, odd fields vanish, second moment") {
    for (double rho : {0.5, 1.0, 3.0}) {
        const VolumeEstimate v =
            integrate_volume_estimate(berger(rho), constant_field(1.0), 2000, 11);
        CHECK(v.value == doctest::Approx(2.0 * kPi * kPi * rho).epsilon(1e-13));
        CHECK(v.std_error < 1e-12);
    }

    const VolumeEstimate odd =
        integrate_volume_estimate(HomogeneousMetric::round(), coordinate_field(0), 50000, 12);
    CHECK(std::abs(odd.value) < 3.0 * odd.std_error + 1e-12);

    const VolumeEstimate sq =
        integrate_volume_estimate(HomogeneousMetric::round(), coordinate_square_field(0), 50000, 13);
    CHECK(std::abs(sq.value - 2.0 * kPi * kPi / 4.0) < 3.0 * sq.std_error);

    CHECK_THROWS_AS(integrate_volume(HomogeneousMetric::round(), constant_field(1.0), 0, 1),
                    std::invalid_argument);
}

TEST_CASE("integrate_volume: deterministic in the seed") {
    const ScalarField f = bump_field(2.0);
    const double a = integrate_volume(berger(0.7), f, 20000, 99);
    const double b = integrate_volume(berger(0.7), f, 20000, 99);
    CHECK(a == b);
    CHECK(a != integrate_volume(berger(0.7), f, 20000, 100));
}

TEST_CASE("averaging formula: constants give both sides exactly") {
    const MonteCarloReport r = verify_averaging_formula(
        berger(1.7), constant_field(4.2), ParametrizedSphere::sigma0(), 1000, kMcGrid, 3);
    CHECK(r.lhs == doctest::Approx(4.2 * volume(berger(1.7))).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(r.lhs).epsilon(1e-12));
    CHECK(r.std_error < 1e-10);
    CHECK(r.within_sigma(3.0));
}

TEST_CASE("averaging formula: Berger metrics with a bump field") {
    for (double rho : {0.5, 2.0}) {
        const MonteCarloReport r = verify_averaging_formula(
            berger(rho), bump_field(2.0), ParametrizedSphere::sigma0(), 5000, kMcGrid, 17);
        CHECK(r.within_sigma(3.0));
        CHECK(r.lhs > 0.0);
        CHECK(r.rhs > 0.0);
    }
}

TEST_CASE("averaging formula: random metric and reference pairs") {
    SplitMix64 rng(41);
    for (int t = 0; t < 10; ++t) {
        const HomogeneousMetric m(0.4 + 2.0 * rng.uniform01(), 0.4 + 2.0 * rng.uniform01(),
                                  0.4 + 2.0 * rng.uniform01());
        const ParametrizedSphere reference =
            translate_sphere(haar_sample(rng), ParametrizedSphere::sigma0());
        const MonteCarloReport r =
            verify_averaging_formula(m, bump_field(2.0), reference, 4000, kMcGrid, 1000 + t);
        CAPTURE(t);
        CHECK(r.within_sigma(3.0));
    }
}

TEST_CASE("averaging formula: fast pullback route equals the chart route") {
    const MonteCarloReport slow = verify_averaging_formula(
        berger(0.6), bump_field(2.0), ParametrizedSphere::sigma0(), 2000, kMcGrid, 5);
    const MonteCarloReport fast =
        verify_averaging_formula(berger(0.6), bump_field(2.0), ParametrizedSphere::sigma0(), 2000,
                                 kMcGrid, 5, {.fast_pullback = true});
    CHECK(fast.lhs == doctest::Approx(slow.lhs).epsilon(1e-12));
    CHECK(fast.rhs == slow.rhs);
}

TEST_CASE("averaging formula: input validation") {
    CHECK_THROWS_AS(verify_averaging_formula(berger(1.0), constant_field(1.0),
                                             ParametrizedSphere::sigma0(), 999, kMcGrid, 1),
                    std::invalid_argument);
}

TEST_CASE("unimodularity: trivial q, random q, odd field") {
    const HomogeneousMetric m = berger(1.3);
    const ScalarField f = bump_field(2.0);

    // q = identity with a shared stream gives identical estimates
    const MonteCarloReport trivial =
        verify_unimodularity(m, f, UnitQuaternion::identity(), 5000, 7, /*shared_seed=*/true);
    CHECK(trivial.lhs == trivial.rhs);
    CHECK(trivial.rel_error == 0.0);

    SplitMix64 rng(42);
    for (int t = 0; t < 5; ++t) {
        const MonteCarloReport r = verify_unimodularity(m, f, haar_sample(rng), 20000, 600 + t);
        CAPTURE(t);
        CHECK(r.within_sigma(3.0));
    }

    // shared samples, transformed on one side only
    const MonteCarloReport shared =
        verify_unimodularity(m, f, haar_sample(rng), 20000, 9, /*shared_seed=*/true);
    CHECK(shared.within_sigma(3.0));

    // f = Re w is odd under the antipodal map: both sides vanish
    const MonteCarloReport odd =
        verify_unimodularity(m, coordinate_field(2), haar_sample(rng), 20000, 8);
    CHECK(std::abs(odd.lhs) < 3.0 * odd.lhs_std_error + 1e-12);
    CHECK(std::abs(odd.rhs) < 3.0 * odd.rhs_std_error + 1e-12);
}

TEST_CASE("fubini exchange: both orders agree to quadrature accuracy") {
    const MonteCarloReport r = verify_fubini_exchange(
        berger(0.5), bump_field(2.0), ParametrizedSphere::sigma0(), 2000, kMcGrid, 99);
    CHECK(r.rel_error < 1e-8);
    const MonteCarloReport skew =
        verify_fubini_exchange(HomogeneousMetric(1.0, 2.0, 3.0), coordinate_square_field(1),
                               ParametrizedSphere::sigma0(), 1000, kMcGrid, 100);
    CHECK(skew.rel_error < 1e-8);
}

TEST_CASE("monte carlo report: relative error floor") {
    const MonteCarloReport r = make_report(1e-15, 0.0, 0.0, 0.0, 1, 0);
    CHECK(r.rel_error == doctest::Approx(1e-3));  // |lhs-rhs| / 1e-12 floor
    CHECK(make_report(5.0, 0.1, 4.9, 0.1, 1, 0).rel_error ==
          doctest::Approx(0.1 / 4.9).epsilon(1e-12));
}
