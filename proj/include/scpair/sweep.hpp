#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scpair/entanglement.hpp"
#include "scpair/model.hpp"
#include "scpair/regime.hpp"

namespace scpair {

enum class SweepParameter { delta, ec, w, r };

std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

// Strictly monotone grid; log spacing requires lo > 0.  Throws ParameterError
// on an empty or non-monotone request.
std::vector<double> make_grid(double lo, double hi, int count, bool log_spacing);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::delta;
    std::vector<double> grid;
    EmitterParams base;
    double r = 100.0; // lambda_F, used unless r itself is swept
};

// Emitter parameters and distance at one grid value.
struct SweepPoint {
    EmitterParams params;
    double r;
};
SweepPoint sweep_point(const SweepSpec& spec, double value);

struct SweepRow {
    double parameter = 0.0;
    double delta_q = 0.0;
    double q = 1.0;
    double err_est = 0.0; // absolute, on Q
    RegimeFlags regime;
    Classification classification = Classification::separable;
};

struct ThresholdCrossing {
    double parameter = 0.0;
    double q_threshold = 0.0;
    std::string kind; // "entanglement" or "bell"
    bool rising = true; // delta_Q increases through the threshold
};

struct SweepResult {
    SweepParameter parameter = SweepParameter::delta;
    std::vector<SweepRow> rows;
    std::vector<ThresholdCrossing> crossings;
};

} // namespace scpair
