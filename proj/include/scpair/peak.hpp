#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "scpair/entanglement.hpp"
#include "scpair/model.hpp"
#include "scpair/regime.hpp"
#include "scpair/sweep.hpp"

namespace scpair {

// delta_Q thresholds: Q = 3/2 and Q = sqrt2/(sqrt2 - 1).
inline constexpr double entanglement_delta_q = 0.5;
inline constexpr double bell_delta_q = std::numbers::sqrt2 + 1.0;

struct PeakResult {
    double delta_q = 0.0;
    std::complex<double> hankel_arg{0.0};
    double est_error = 0.0; // relative
    RegimeFlags regime;
    Classification classification = Classification::separable; // thresholds met
};

// Bunching-peak height at theta = pi with Lambda = 1; r in lambda_F.
PeakResult delta_q_peak(const EmitterParams& params, double r);

// Upper/lower envelopes of the oscillating peak height from the split of
// H0^(2) into the two counter-propagating waves of -z.
struct PeakEnvelope {
    double upper = 0.0, lower = 0.0;
};
PeakEnvelope peak_envelope(const EmitterParams& params, double r);

// exp(-8 (k_F w)^2 sin^2((pi - theta)/4)), theta in [0, 2 pi).
double angular_profile(double theta, const EmitterParams& params);

SweepRow peak_row(const SweepSpec& spec, double value);

// Bisection between neighbouring rows that straddle a threshold, to 1e-6
// relative in the swept parameter.
std::vector<ThresholdCrossing> locate_crossings(const SweepSpec& spec, const std::vector<SweepRow>& rows);

SweepResult threshold_map(const SweepSpec& spec, int threads = 1);

} // namespace scpair
