#pragma once

#include <numbers>

// Fermi units: hbar = k_F = mu = 1.  Lengths are carried internally in 1/k_F;
// every public length argument is in units of lambda_F.
namespace scpair::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double k_fermi = 1.0;
inline constexpr double mu = 1.0;
inline constexpr double mass = 0.5;
inline constexpr double lambda_fermi = 2.0 * pi / k_fermi;

constexpr double to_kf(double length_in_lambda) { return length_in_lambda * lambda_fermi; }
constexpr double to_lambda(double length_in_kf) { return length_in_kf / lambda_fermi; }

// Regime cutoffs that turn the ">>" conditions into flags.
inline constexpr double far_field_min = 50.0;     // k_F r
inline constexpr double filter_min = 20.0;        // mu / E_C
inline constexpr double fraunhofer_min = 10.0;    // r / (k_F w^2)

} // namespace scpair::units
