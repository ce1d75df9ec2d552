#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "scpair/units.hpp"

namespace scpair {

struct EmitterParams {
    std::complex<double> delta{2.997e-3, 0.0}; // gap, units of mu
    double ec = 2.997e-3;                      // filter scale E_C, units of mu
    double w = 1.0;                            // emitting-region size, units of lambda_F

    double width() const { return units::to_kf(w); } // w in 1/k_F
    double gap() const { return std::abs(delta); }
};

// Throws ParameterError unless E_C > 0, w > 0, 0 <= |Delta| < mu (all finite).
void validate(const EmitterParams& p);

struct DerivedParams {
    double xi;              // Pippard length, lambda_F units; +inf when Delta = 0
    double xi_kf;           // same, 1/k_F units
    double lambda_f;        // 2 pi / k_F
    double w_over_xi;
    double delta_over_ec;
};

DerivedParams derive_params(const EmitterParams& p);

struct QuasiparticleState {
    double eps_k;
    double omega_k;
    std::complex<double> ukvk;
    double vk2;
};

QuasiparticleState bogoliubov(double eps_k, std::complex<double> delta);

// Free-particle energy measured from mu, for real or complex momentum.
template <class S>
S normal_energy(const S& p) { return p * p / (2.0 * units::mass) - units::mu; }

// g evaluated on the squared momentum so complex contour momenta work too.
template <class S>
S gaussian_factor(const S& q2, double width)
{
    constexpr double norm = 1.0 / (8.0 * units::pi * units::pi * units::pi);
    return norm * std::exp(-q2 * (width * width / 2.0));
}

template <class S>
S tunneling_factor(const S& p, double ec)
{
    using std::sqrt;
    return sqrt(p / units::mass) * std::exp(normal_energy(p) / (2.0 * ec));
}

struct FormFactors {
    double g; // g(p - k)
    double h; // h(p)
    double t; // h(p) g(p - k)
};

// Momenta in units of k_F.
FormFactors form_factors(const Eigen::Vector3d& p, const Eigen::Vector3d& k, const EmitterParams& params);

// p_k = sqrt(2 m (mu - omega)); throws OutOfBandError for omega >= mu.
double pole_momentum(double omega);

} // namespace scpair
