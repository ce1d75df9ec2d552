#pragma once

#include <complex>

#include <Eigen/Core>

#include "scpair/model.hpp"
#include "scpair/quad.hpp"
#include "scpair/regime.hpp"

namespace scpair {

// Detector positions in units of lambda_F.
struct DetectorGeometry {
    Eigen::Vector3d r1{0.0, 0.0, 100.0};
    Eigen::Vector3d r2{0.0, 0.0, -100.0};

    // r1 = r z-hat, r2 at polar angle theta in the x-z plane.
    static DetectorGeometry symmetric(double r, double theta);
    DetectorGeometry swapped() const { return {r2, r1}; }
    double cos_theta() const { return r1.normalized().dot(r2.normalized()); }
};

RegimeFlags regime_flags(const DetectorGeometry& g, const EmitterParams& p);

struct CorrelationSpec {
    quad::QuadSpec outer = quad::with_rel_tol(1e-3);  // inner levels run one order tighter
    double cutoff_multiplier = 20.0; // E_cut = min(mu, multiplier * max(E_C, |Delta|))
};

// Far-field outgoing amplitude A_k(r); k in units of k_F, r in lambda_F, omega in mu.
std::complex<double> farfield_amplitude(const Eigen::Vector3d& k, const Eigen::Vector3d& r, double omega,
                                        const EmitterParams& params);

// Energy window of the k-integral for gamma (capped so that omega_k < mu).
double energy_cutoff(const EmitterParams& params, double multiplier = 20.0);

// gamma(2;1) = int d^3k v_k^2 A_k(r1) A_k(r2)^*.
quad::QuadResult gamma(const DetectorGeometry& g, const EmitterParams& params, const CorrelationSpec& spec = {});

// Equal-time pair amplitude chi(2;1).
quad::QuadResult chi(const DetectorGeometry& g, const EmitterParams& params, const CorrelationSpec& spec = {});

struct CorrelationResult {
    double gamma11 = 0.0, gamma22 = 0.0;
    std::complex<double> gamma21{0.0}, chi21{0.0};
    double rho1_1 = 0.0, rho1_2 = 0.0;
    double rho2 = 0.0;
    double Q = 0.0;
    double err_est = 0.0; // absolute error estimate of Q
    long evaluations = 0;
    bool converged = true;
    RegimeFlags regime;
};

// Coincidence density and normalised Q from the four components; throws UndefinedError when a
// one-particle density vanishes.
CorrelationResult assemble(double gamma11, double gamma22, std::complex<double> gamma21, std::complex<double> chi21);

CorrelationResult rho2_and_Q(const DetectorGeometry& g, const EmitterParams& params, const CorrelationSpec& spec = {});

} // namespace scpair
