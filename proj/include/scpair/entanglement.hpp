#pragma once

#include <numbers>
#include <string_view>

#include <Eigen/Core>

#include "scpair/correlations.hpp"

namespace scpair {

enum class Classification { separable, entangled, bell_violating };

std::string_view to_string(Classification c);

inline constexpr double entanglement_p = 1.0 / 3.0;
inline constexpr double bell_p = std::numbers::sqrt2 / 2.0;

struct WernerReport {
    double a = 0.0; // gamma22 gamma11 - |gamma21|^2, weight of the identity
    double b = 0.0; // 2 (|gamma21|^2 + |chi|^2), weight of the singlet projector
    double p = 0.0; // singlet weight b / (4a + b)
    double concurrence = 0.0;
    double chsh = 0.0; // optimal CHSH value 2 sqrt(2) p
    Classification classification = Classification::separable;
};

// Exact thresholds go to the lower class.
Classification classify(double p);

WernerReport werner_from_weights(double a, double b);
WernerReport werner_decompose(const CorrelationResult& corr);

// Singlet weight when gamma(2;1) = 0: p = (Q - 1)/Q.
double singlet_weight_from_q(double q);

// Normalised spin state a*1 + b|Psi-><Psi-| over (4a + b), basis
// |up up>, |up down>, |down up>, |down down>.
Eigen::Matrix4d werner_density(double a, double b);

} // namespace scpair
