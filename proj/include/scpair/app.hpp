#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>

#include "scpair/config.hpp"

namespace scpair::app {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

struct RunContext {
    RunConfig cfg;
    std::filesystem::path cache_dir; // empty disables the cache
    bool json_only = false;
    std::ostream* out;
    std::ostream* err;
};

int cmd_params(const RunContext& ctx);
int cmd_angular(const RunContext& ctx);
int cmd_peak(const RunContext& ctx);
int cmd_fig3(const RunContext& ctx);
int cmd_classify(const RunContext& ctx);
int cmd_sweep(const RunContext& ctx);

// Runs a command and maps exceptions onto exit codes: configuration and
// parameter errors -> 2, non-convergence or undefined observables -> 3.
int guarded(const std::function<int()>& body, std::ostream& err);

// Fixed fig3 panel grids (log in |Delta|, E_C and r; linear in w).
SweepSpec fig3_panel(const RunConfig& cfg, SweepParameter which);

} // namespace scpair::app
