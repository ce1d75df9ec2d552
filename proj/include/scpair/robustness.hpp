#pragma once

#include <string>
#include <vector>

#include "scpair/peak.hpp"

namespace scpair {

struct FluctuationSpec {
    double sigma_w = 0.05; // std-dev of w, lambda_F
    double sigma_r0 = 0.1; // std-dev of each transverse tip-displacement component, lambda_F
    int samples = 16;      // Gauss-Hermite order per averaged dimension
};

void validate(const FluctuationSpec& f);

// Nodes and weights for weight exp(-x^2) (Golub-Welsch); weights sum to sqrt(pi).
struct GaussHermiteRule {
    std::vector<double> nodes, weights;
};
GaussHermiteRule gauss_hermite(int n);

struct AveragedPeak {
    PeakResult peak;            // delta_q replaced by the averaged value
    double unperturbed = 0.0;   // delta_q_peak at the nominal parameters
    double fractional_change = 0.0; // (averaged - unperturbed) / unperturbed
    double width_average = 0.0; // <delta_Q> over w
    double envelope_factor = 1.0; // <angular envelope> over the tip displacement
    double max_node_delta_q = 0.0; // largest delta_Q over the w nodes
    double misalignment_tolerance = 0.0; // delta_theta with k_F w delta_theta = 1, rad
    std::string interpretation; // how displacement enters; flagged in metadata
};

// Gaussian average over w (through delta_q_peak) and over the transverse tip
// displacement (through the angular envelope at delta_theta = |r0_perp|/r).
AveragedPeak averaged_peak(const EmitterParams& params, double r, const FluctuationSpec& fluct);

// Angular envelope at misalignment delta_theta (rad) from the peak.
double misalignment_envelope(double delta_theta, const EmitterParams& params);

struct RoughnessBound {
    double bound = 0.0;           // tolerable roughness, lambda_F
    double tolerance_angle = 0.0; // delta_theta = 1/(k_F w), rad
    std::string chain;            // the inequality chain, human readable
};
RoughnessBound roughness_bound(const EmitterParams& params);

} // namespace scpair
