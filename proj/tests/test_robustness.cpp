#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scpair/errors.hpp"
#include "scpair/robustness.hpp"

using namespace scpair;
using doctest::Approx;

TEST_CASE("Gauss-Hermite rule")
{
    for (int n : {1, 5, 16, 40}) {
        const auto gh = gauss_hermite(n);
        double s0 = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            s0 += gh.weights[i];
            s2 += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
        }
        CHECK(s0 == Approx(std::sqrt(units::pi)).epsilon(1e-13));
        if (n > 1)
            CHECK(s2 == Approx(std::sqrt(units::pi) / 2).epsilon(1e-12));
    }
}

TEST_CASE("zero spread reproduces the unperturbed peak")
{
    const EmitterParams p;
    FluctuationSpec f;
    f.sigma_w = f.sigma_r0 = 0.0;
    const AveragedPeak a = averaged_peak(p, 100.0, f);
    CHECK(a.peak.delta_q == delta_q_peak(p, 100.0).delta_q);
    CHECK(a.fractional_change == 0.0);
    CHECK_FALSE(a.interpretation.empty());
}

TEST_CASE("width spread of xi/100")
{
    EmitterParams p;
    p.w = 3.0;
    FluctuationSpec f;
    f.sigma_w = derive_params(p).xi / 100.0;
    f.sigma_r0 = 0.0;
    CHECK(std::abs(averaged_peak(p, 100.0, f).fractional_change) < 1e-2);

    // at w = lambda_F the same spread puts quadrature nodes at w <= 0
    p.w = 1.0;
    CHECK_THROWS_AS(averaged_peak(p, 100.0, f), ParameterError);
}

TEST_CASE("averaging is a convex combination")
{
    const EmitterParams p;
    for (double sw : {0.05, 0.1})
        for (double r : {30.0, 100.0, 5e5}) {
            FluctuationSpec f;
            f.sigma_w = sw;
            const AveragedPeak a = averaged_peak(p, r, f);
            CHECK(a.peak.delta_q <= a.max_node_delta_q * (1 + 1e-12));
            CHECK(a.envelope_factor <= 1.0);
        }
}

TEST_CASE("Gauss-Hermite order doubling")
{
    const EmitterParams p;
    FluctuationSpec f;
    const double a = averaged_peak(p, 100.0, f).peak.delta_q;
    f.samples *= 2;
    CHECK(averaged_peak(p, 100.0, f).peak.delta_q == Approx(a).epsilon(1e-3));
}

TEST_CASE("misalignment and roughness")
{
    EmitterParams p;
    p.w = units::to_lambda(4096.0);
    const double dth = 1.0 / 4096.0;
    CHECK(misalignment_envelope(dth, p) == Approx(std::exp(-0.5)).epsilon(1e-8));
    CHECK(averaged_peak(p, 100.0, {}).misalignment_tolerance == Approx(dth).epsilon(1e-14));

    for (double w : {1.0, 2.0, 5.5}) {
        p.w = w;
        const RoughnessBound b = roughness_bound(p);
        CHECK(b.bound == Approx(w).epsilon(1e-14));
        CHECK(b.tolerance_angle == Approx(1.0 / units::to_kf(w)).epsilon(1e-14));
        CHECK_FALSE(b.chain.empty());
    }
}

TEST_CASE("fluctuation validation")
{
    FluctuationSpec f;
    f.sigma_w = -0.1;
    CHECK_THROWS_AS(validate(f), ParameterError);
    f = {};
    f.samples = 0;
    CHECK_THROWS_AS(validate(f), ParameterError);
}
