#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scpair/correlations.hpp"
#include "scpair/quad.hpp"

// Independent reference computations used only by tests and `scpair validate`.
namespace scpair::oracle {

// Wootters concurrence of a real two-qubit density matrix, basis
// |00>, |01>, |10>, |11>.
double wootters_concurrence(const Eigen::Matrix4d& rho);

// (2 pi)^{-3/2} int d^3p T_{p,k} e^{i p.r} / (eps_p + omega - i0), by direct
// quadrature: the p-hat integral in closed form for a general complex
// exponent, the radial integral by principal value plus residue.
quad::QuadResult farfield_integral(const Eigen::Vector3d& k, const Eigen::Vector3d& r, double omega,
                                   const EmitterParams& params, double rel_tol = 1e-8);

// gamma(2;1) = int d^3k v_k^2 A_k(r1) A_k(r2)^* with the k-hat integral done
// numerically over (cos theta_k, phi_k) from farfield_amplitude.
quad::QuadResult gamma_spherical(const DetectorGeometry& g, const EmitterParams& params, double rel_tol = 1e-6);

struct GoldenPoint {
    std::complex<double> z;
    std::complex<double> value;
    std::string tag;
};

// Throws std::runtime_error on a missing or malformed table.
std::vector<GoldenPoint> load_specfun_golden(const std::filesystem::path& file);

struct PeakGolden {
    EmitterParams params;
    double r = 0.0;
    double delta_q = 0.0;
};
PeakGolden load_peak_golden(const std::filesystem::path& file);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace scpair::oracle
