#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "scpair/errors.hpp"
#include "scpair/model.hpp"
#include "scpair/robustness.hpp"
#include "scpair/sweep.hpp"

namespace scpair {

class ConfigError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Everything a CLI run depends on.  Physical inputs are the dimensionless
// ratios |Delta|/mu, E_C/mu, w/lambda_F, r/lambda_F.
struct RunConfig {
    double delta = 2.997e-3;
    double delta_phase = 0.0; // arg(Delta), rad
    double ec = 2.997e-3;
    double w = 1.0;
    double r = 100.0;
    double theta = units::pi; // classify geometry

    double theta_min = 0.0;
    double theta_max = units::pi;
    int theta_count = 91;

    std::string sweep_param = "r";
    double sweep_min = 10.0;
    double sweep_max = 1e7;
    int sweep_count = 400;
    std::string sweep_scale = "log";

    int fig3_points = 2000;

    double rel_tol = 1e-3;           // outer; inner levels one order tighter
    double cutoff_multiplier = 20.0; // E_cut = min(mu, m * max(E_C, |Delta|))

    double sigma_w = 0.05;
    double sigma_r0 = 0.1;
    int gh_samples = 16;

    std::string cache_dir;          // empty: resolved by resolve_cache_dir
    std::string output_dir = ".";
    int threads = 1;

    EmitterParams emitter() const;
    FluctuationSpec fluctuations() const;
    SweepSpec sweep_spec() const;
};

// key = value lines; '#' starts a comment; unknown keys are rejected.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// Range checks; throws ConfigError.
void validate(const RunConfig& cfg);

// Canonical text of every setting that can change a numerical output (paths
// and thread count excluded), exact via hex floats.
std::string canonical_text(const RunConfig& cfg);

// FNV-1a 64-bit of canonical_text, 16 hex digits.
std::string config_hash(const RunConfig& cfg);

// flag > environment (SCPAIR_CACHE_DIR) > config file > ".scpair-cache".
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag, const RunConfig& file_cfg);

inline constexpr std::string_view code_version = SCPAIR_VERSION;

} // namespace scpair
