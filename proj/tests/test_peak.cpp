#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scpair/errors.hpp"
#include "scpair/peak.hpp"

using namespace scpair;
using doctest::Approx;

TEST_CASE("golden peak value")
{
    const auto g = oracle::load_peak_golden(std::filesystem::path(SCPAIR_DATA_DIR) / "peak_golden.txt");
    CHECK(delta_q_peak(g.params, g.r).delta_q == Approx(g.delta_q).epsilon(1e-10));
}

TEST_CASE("peak height trends")
{
    EmitterParams p;
    for (double r : {20.0, 100.0, 3000.0}) {
        const double base = delta_q_peak(p, r).delta_q;
        EmitterParams h = p;
        h.ec /= 2;
        CHECK(delta_q_peak(h, r).delta_q > base);
    }
    // |Delta|/E_C -> 0 suppresses the peak like (|Delta|/E_C)^2
    p.ec = 1.0 / 25.0;
    p.delta = 1e-6;
    const double a = delta_q_peak(p, 100.0).delta_q;
    p.delta = 1e-7;
    const double b = delta_q_peak(p, 100.0).delta_q;
    CHECK(a < 1e-6);
    CHECK(b < a);

    p.delta = 0.0;
    CHECK(delta_q_peak(p, 100.0).delta_q == 0.0);
}

TEST_CASE("peak is non-negative and classified")
{
    const EmitterParams p;
    for (double r = 10.0; r < 1e7; r *= 1.7) {
        const PeakResult pk = delta_q_peak(p, r);
        CHECK(pk.delta_q >= 0.0);
        const double q = 1.0 + pk.delta_q;
        CHECK(pk.classification == classify((q - 1.0) / q));
    }
    CHECK(delta_q_peak(p, 100.0).classification == Classification::bell_violating);
}

TEST_CASE("angular profile")
{
    EmitterParams p;
    CHECK(angular_profile(units::pi, p) == 1.0);
    p.w = units::to_lambda(5.0);
    CHECK(angular_profile(units::pi - 0.2, p) == Approx(std::exp(-8.0 * 25.0 * std::pow(std::sin(0.05), 2))).epsilon(1e-14));
    CHECK(angular_profile(units::pi - 0.2, p) == Approx(0.606783).epsilon(1e-6));
    CHECK_THROWS_AS(angular_profile(2.0 * units::pi, p), ParameterError);
    CHECK_THROWS_AS(angular_profile(-0.1, p), ParameterError);
}

TEST_CASE("thresholds and crossings")
{
    CHECK(1.0 + entanglement_delta_q == 1.5);
    CHECK(1.0 + bell_delta_q == Approx(std::sqrt(2.0) / (std::sqrt(2.0) - 1.0)).epsilon(1e-15));

    SweepSpec s;
    s.parameter = SweepParameter::delta;
    s.grid = make_grid(1e-4, 5e-3, 60, true);
    const SweepResult res = threshold_map(s, 2);
    REQUIRE(res.rows.size() == 60);
    for (std::size_t i = 0; i < res.rows.size(); ++i)
        CHECK(res.rows[i].parameter == s.grid[i]);
    REQUIRE(res.crossings.size() == 2);
    for (const auto& c : res.crossings) {
        CHECK(c.rising);
        const double t = c.q_threshold - 1.0;
        CHECK((peak_row(s, c.parameter * (1 - 1e-6)).delta_q - t) * (peak_row(s, c.parameter * (1 + 1e-6)).delta_q - t) <= 0.0);
    }
    CHECK(res.crossings[0].kind == "entanglement");
    CHECK(res.crossings[1].kind == "bell");
}

TEST_CASE("large-r behaviour")
{
    const EmitterParams p;
    const DerivedParams d = derive_params(p);
    const double scale = units::to_lambda(d.xi_kf * d.xi_kf);

    // r * envelope stays bounded and non-vanishing over a decade
    double lo = INFINITY, hi = 0.0;
    for (double r = 30 * scale; r <= 300 * scale; r *= 1.05) {
        const double v = r * peak_envelope(p, r).upper;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo < 2.0);

    // the outgoing and counter-propagating waves in H0^(2) beat as e^{2 i b},
    // b = r/(2 pi^2 k_F xi^2): maxima recur every pi in b
    const double period = units::pi * 2.0 * units::pi * units::pi * d.xi_kf * d.xi_kf / units::to_kf(1.0);
    std::vector<double> maxima;
    double prev2 = 0, prev1 = 0;
    const double r0 = 50 * scale, dr = period / 400.0;
    for (int i = 0; i < 4000; ++i) {
        const double v = delta_q_peak(p, r0 + i * dr).delta_q;
        if (i >= 2 && prev1 > prev2 && prev1 > v)
            maxima.push_back(r0 + (i - 1) * dr);
        prev2 = prev1;
        prev1 = v;
    }
    REQUIRE(maxima.size() >= 5);
    for (std::size_t i = 1; i < maxima.size(); ++i)
        CHECK((maxima[i] - maxima[i - 1]) / period == Approx(1.0).epsilon(0.05));
}
