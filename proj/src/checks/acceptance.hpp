#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace scpair::acceptance {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::filesystem::path data_dir = SCPAIR_DATA_DIR;
    std::filesystem::path work_dir; // scratch space for the determinism check; temp dir when empty
    std::vector<int> only;          // empty: all criteria
};

inline constexpr int criterion_count = 11;

// A check that throws is reported as failed with the exception text.
CheckResult run_check(int id, const Options& opt);

// Runs the selected criteria in order, printing one line per criterion to
// `progress` when given.
std::vector<CheckResult> run_all(const Options& opt, std::ostream* progress = nullptr);

std::string format_line(const CheckResult& r);

} // namespace scpair::acceptance
