#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "scpair/entanglement.hpp"
#include "scpair/errors.hpp"

using namespace scpair;
using doctest::Approx;

TEST_CASE("thresholds from Q")
{
    CHECK(std::abs(singlet_weight_from_q(1.5) - 1.0 / 3.0) < 1e-15);
    const double qb = std::numbers::sqrt2 / (std::numbers::sqrt2 - 1.0);
    CHECK(std::abs(singlet_weight_from_q(qb) - 1.0 / std::numbers::sqrt2) < 1e-15);
}

TEST_CASE("Werner boundaries")
{
    auto r = werner_from_weights(1.0, 2.0);
    CHECK(r.p == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r.concurrence == Approx(0.0));
    CHECK(r.classification == Classification::separable);
    CHECK(oracle::wootters_concurrence(werner_density(1.0, 2.0)) < 1e-12);

    r = werner_from_weights(0.7, 0.0);
    CHECK(r.p == 0.0);
    CHECK(r.chsh == 0.0);
    CHECK(r.classification == Classification::separable);

    // gamma21 = 0 and Q at the Bell threshold
    const double g = 0.8, qb = std::numbers::sqrt2 / (std::numbers::sqrt2 - 1.0);
    const CorrelationResult c = assemble(g, g, 0.0, g * std::sqrt(2.0 * (qb - 1.0)));
    const WernerReport w = werner_decompose(c);
    CHECK(w.p == Approx(1.0 / std::numbers::sqrt2).epsilon(1e-13));
    CHECK(w.chsh == Approx(2.0).epsilon(1e-13));

    CHECK(classify(1.0 / 3.0) == Classification::separable);
    CHECK(classify(std::nextafter(1.0 / 3.0, 1.0)) == Classification::entangled);
    CHECK(classify(std::numbers::sqrt2 / 2.0) == Classification::entangled);
    CHECK(classify(0.72) == Classification::bell_violating);

    CHECK_THROWS_AS(werner_from_weights(-1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(werner_from_weights(0.0, 0.0), UndefinedError);
}

TEST_CASE("classification from p matches classification from Q")
{
    const double g = 1.3;
    for (double q = 1.0; q < 6.0; q += 0.01) {
        const CorrelationResult c = assemble(g, g, 0.0, g * std::sqrt(2.0 * (q - 1.0)));
        const Classification byq = c.Q > std::numbers::sqrt2 / (std::numbers::sqrt2 - 1.0) ? Classification::bell_violating
                                   : c.Q > 1.5                                               ? Classification::entangled
                                                                                             : Classification::separable;
        CHECK(werner_decompose(c).classification == byq);
    }
}

TEST_CASE("p increases with the pair amplitude")
{
    double prev = -1.0;
    for (double chi = 0.0; chi < 3.0; chi += 0.1) {
        const double p = werner_decompose(assemble(1.0, 0.8, {0.2, 0.1}, chi)).p;
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("concurrence oracle on random Werner states")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(rng), b = u(rng);
        const Eigen::Matrix4d rho = werner_density(a, b);
        CHECK(rho.trace() == Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(werner_from_weights(a, b).concurrence - oracle::wootters_concurrence(rho)) < 1e-12);
    }
}

TEST_CASE("singlet is maximally entangled")
{
    CHECK(oracle::wootters_concurrence(werner_density(0.0, 1.0)) == Approx(1.0).epsilon(1e-14));
    CHECK(werner_from_weights(0.0, 1.0).chsh == Approx(2.0 * std::numbers::sqrt2));
}
