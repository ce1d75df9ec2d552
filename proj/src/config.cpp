#include "scpair/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace scpair {
namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view v)
{
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
    return x;
}

int parse_int(std::string_view key, std::string_view v)
{
    int x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(v) + "'");
    return x;
}

std::string hex(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

} // namespace

EmitterParams RunConfig::emitter() const
{
    EmitterParams p;
    p.delta = std::polar(delta, delta_phase);
    p.ec = ec;
    p.w = w;
    return p;
}

FluctuationSpec RunConfig::fluctuations() const
{
    FluctuationSpec f;
    f.sigma_w = sigma_w;
    f.sigma_r0 = sigma_r0;
    f.samples = gh_samples;
    return f;
}

SweepSpec RunConfig::sweep_spec() const
{
    SweepSpec s;
    s.parameter = parse_sweep_parameter(sweep_param);
    s.grid = make_grid(sweep_min, sweep_max, sweep_count, sweep_scale == "log");
    s.base = emitter();
    s.r = r;
    return s;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value)
{
    value = trim(value);
    auto dbl = [&](double& field) { field = parse_double(key, value); };
    auto integer = [&](int& field) { field = parse_int(key, value); };
    if (key == "delta") dbl(c.delta);
    else if (key == "delta_phase") dbl(c.delta_phase);
    else if (key == "ec") dbl(c.ec);
    else if (key == "w") dbl(c.w);
    else if (key == "r") dbl(c.r);
    else if (key == "theta") dbl(c.theta);
    else if (key == "theta_min") dbl(c.theta_min);
    else if (key == "theta_max") dbl(c.theta_max);
    else if (key == "theta_count") integer(c.theta_count);
    else if (key == "sweep_param") c.sweep_param = std::string(value);
    else if (key == "sweep_min") dbl(c.sweep_min);
    else if (key == "sweep_max") dbl(c.sweep_max);
    else if (key == "sweep_count") integer(c.sweep_count);
    else if (key == "sweep_scale") c.sweep_scale = std::string(value);
    else if (key == "fig3_points") integer(c.fig3_points);
    else if (key == "rel_tol") dbl(c.rel_tol);
    else if (key == "cutoff_multiplier") dbl(c.cutoff_multiplier);
    else if (key == "sigma_w") dbl(c.sigma_w);
    else if (key == "sigma_r0") dbl(c.sigma_r0);
    else if (key == "gh_samples") integer(c.gh_samples);
    else if (key == "cache_dir") c.cache_dir = std::string(value);
    else if (key == "output_dir") c.output_dir = std::string(value);
    else if (key == "threads") integer(c.threads);
    else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, RunConfig cfg)
{
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string_view key = trim(line.substr(0, eq));
        try {
            apply_setting(cfg, key, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), base);
}

void validate(const RunConfig& c)
{
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(c.delta >= 0.0) || !(c.delta < 1.0)) fail("delta must satisfy 0 <= |Delta|/mu < 1");
    if (!(c.ec > 0.0)) fail("ec must be positive");
    if (!(c.w > 0.0)) fail("w must be positive");
    if (!(c.r > 0.0)) fail("r must be positive");
    if (!std::isfinite(c.theta) || c.theta < 0.0 || c.theta > 2.0 * units::pi) fail("theta must lie in [0, 2 pi]");
    if (c.theta_count < 1) fail("theta grid is empty");
    if (c.theta_count > 1 && !(c.theta_min < c.theta_max)) fail("theta grid must be strictly increasing");
    if (c.theta_min < 0.0 || c.theta_max > 2.0 * units::pi) fail("theta grid must lie in [0, 2 pi]");
    if (c.sweep_count < 1) fail("sweep grid is empty");
    if (c.sweep_count > 1 && !(c.sweep_min < c.sweep_max)) fail("sweep grid must be strictly increasing");
    if (c.sweep_scale == "log" && !(c.sweep_min > 0.0)) fail("log sweep needs a positive lower bound");
    if (c.sweep_scale != "log" && c.sweep_scale != "linear") fail("sweep_scale must be log or linear");
    parse_sweep_parameter(c.sweep_param);
    if (c.fig3_points < 2) fail("fig3_points must be at least 2");
    if (!(c.rel_tol >= 1e-11) || !(c.rel_tol < 1.0)) fail("rel_tol must lie in [1e-11, 1)");
    if (!(c.cutoff_multiplier > 0.0)) fail("cutoff_multiplier must be positive");
    if (!(c.sigma_w >= 0.0) || !(c.sigma_r0 >= 0.0)) fail("sigmas must be non-negative");
    if (c.gh_samples < 1 || c.gh_samples > 200) fail("gh_samples must lie in [1, 200]");
    if (c.threads < 1 || c.threads > 256) fail("threads must lie in [1, 256]");
}

std::string canonical_text(const RunConfig& c)
{
    std::ostringstream o;
    o << "delta=" << hex(c.delta) << "\ndelta_phase=" << hex(c.delta_phase) << "\nec=" << hex(c.ec)
      << "\nw=" << hex(c.w) << "\nr=" << hex(c.r) << "\ntheta=" << hex(c.theta)
      << "\ntheta_min=" << hex(c.theta_min) << "\ntheta_max=" << hex(c.theta_max)
      << "\ntheta_count=" << c.theta_count << "\nsweep_param=" << c.sweep_param
      << "\nsweep_min=" << hex(c.sweep_min) << "\nsweep_max=" << hex(c.sweep_max)
      << "\nsweep_count=" << c.sweep_count << "\nsweep_scale=" << c.sweep_scale
      << "\nfig3_points=" << c.fig3_points << "\nrel_tol=" << hex(c.rel_tol)
      << "\ncutoff_multiplier=" << hex(c.cutoff_multiplier) << "\nsigma_w=" << hex(c.sigma_w)
      << "\nsigma_r0=" << hex(c.sigma_r0) << "\ngh_samples=" << c.gh_samples
      << "\ncode_version=" << code_version << "\n";
    return o.str();
}

std::string config_hash(const RunConfig& c)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical_text(c)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag, const RunConfig& file_cfg)
{
    if (flag && !flag->empty())
        return *flag;
    if (const char* env = std::getenv("SCPAIR_CACHE_DIR"); env && *env)
        return env;
    if (!file_cfg.cache_dir.empty())
        return file_cfg.cache_dir;
    return ".scpair-cache";
}

} // namespace scpair
