#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scpair/errors.hpp"
#include "scpair/model.hpp"

using namespace scpair;
using doctest::Approx;

TEST_CASE("Pippard length")
{
    EmitterParams p;
    p.delta = 2.997e-3;
    CHECK(derive_params(p).xi == Approx(33.8).epsilon(2e-3));

    for (double d : {1e-5, 1e-3, 0.2, 0.9}) {
        p.delta = d;
        const DerivedParams dp = derive_params(p);
        CHECK(std::abs(dp.xi * units::pi * units::pi * d - 1.0) < 1e-12);
        CHECK(dp.xi_kf == Approx(units::to_kf(dp.xi)).epsilon(1e-14));
    }

    p.delta = 0.0;
    CHECK(std::isinf(derive_params(p).xi));

    p.delta = 1e-2;
    p.ec = 1e-2;
    CHECK(derive_params(p).delta_over_ec == Approx(1.0));
}

TEST_CASE("parameter validation")
{
    EmitterParams p;
    p.ec = 0.0;
    CHECK_THROWS_AS(validate(p), ParameterError);
    p = {};
    p.w = -1.0;
    CHECK_THROWS_AS(validate(p), ParameterError);
    p = {};
    p.delta = 1.0;
    CHECK_THROWS_AS(validate(p), ParameterError);
    p = {};
    p.ec = NAN;
    CHECK_THROWS_AS(validate(p), ParameterError);
    CHECK_NOTHROW(validate(EmitterParams{}));
}

TEST_CASE("Bogoliubov amplitudes")
{
    const double d = 0.01;
    auto q = bogoliubov(0.0, d);
    CHECK(q.ukvk.real() == Approx(0.5));
    CHECK(q.vk2 == Approx(0.5));

    q = bogoliubov(-0.3, 0.0);
    CHECK(q.ukvk == std::complex<double>(0.0));
    CHECK(q.vk2 == 1.0);
    CHECK(bogoliubov(0.3, 0.0).vk2 == 0.0);

    q = bogoliubov(0.75 * d, std::polar(d, 0.4));
    CHECK(q.omega_k == Approx(1.25 * d));
    CHECK(std::abs(q.ukvk - 0.4 * std::polar(1.0, 0.4)) < 1e-15);

    for (double e : {-0.2, -1e-3, 0.0, 2e-4, 0.05}) {
        const auto a = bogoliubov(e, d), b = bogoliubov(-e, d);
        CHECK(std::norm(a.ukvk) + 0.25 * std::pow(e / a.omega_k, 2) == Approx(0.25).epsilon(1e-14));
        CHECK(std::abs(a.ukvk) <= 0.5);
        CHECK(a.vk2 + b.vk2 == Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("form factors")
{
    EmitterParams p;
    p.w = 1.0;
    const double g0 = std::pow(2.0 * units::pi, -3);
    const Eigen::Vector3d k(0.3, -0.2, 0.9);
    CHECK(form_factors(k, k, p).g == Approx(g0).epsilon(1e-14));

    const double w = p.width();
    const Eigen::Vector3d off = k + Eigen::Vector3d(0.0, 2.0 / w, 0.0);
    CHECK(form_factors(off, k, p).g == Approx(g0 * std::exp(-2.0)).epsilon(1e-14));

    const Eigen::Vector3d fermi(0.0, 0.6, 0.8);
    CHECK(form_factors(fermi, k, p).h == Approx(std::sqrt(1.0 / units::mass)).epsilon(1e-14));

    for (double pm : {0.5, 0.9, 1.1}) {
        const Eigen::Vector3d pv(0.0, 0.0, pm);
        const FormFactors f = form_factors(pv, k, p);
        CHECK(f.h * f.h * units::mass / pm == Approx(std::exp((pm * pm - 1.0) / p.ec)).epsilon(1e-12));
        CHECK(f.t == Approx(f.h * f.g).epsilon(1e-15));
    }
}

TEST_CASE("pole momentum")
{
    CHECK(pole_momentum(0.0) == 1.0);
    CHECK(pole_momentum(0.19) == Approx(0.9).epsilon(1e-15));
    CHECK_THROWS_AS(pole_momentum(1.5), OutOfBandError);
    CHECK_THROWS_AS(pole_momentum(1.0), OutOfBandError);
    CHECK_THROWS_AS(pole_momentum(-0.1), ParameterError);
}
