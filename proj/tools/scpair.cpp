// scpair command-line front end.  Exit codes: 0 success, 1 validation
// failure, 2 usage or configuration error, 3 numerical non-convergence.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance.hpp"
#include "scpair/app.hpp"

namespace {

using namespace scpair;

struct Options {
    std::string config;
    std::vector<std::string> settings;
    std::string cache_dir;
    bool no_cache = false;
    int threads = 0;
    std::string output_dir;
    bool json = false;
    std::string data_dir = SCPAIR_DATA_DIR;
    std::vector<int> only;
};

RunConfig build_config(const Options& o)
{
    RunConfig cfg;
    if (!o.config.empty())
        cfg = load_config(o.config);
    for (const std::string& kv : o.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.threads > 0)
        cfg.threads = o.threads;
    if (!o.output_dir.empty())
        cfg.output_dir = o.output_dir;
    validate(cfg);
    return cfg;
}

int run_command(const std::string& name, const Options& o)
{
    return app::guarded(
        [&] {
            app::RunContext ctx;
            ctx.cfg = build_config(o);
            if (!o.no_cache)
                ctx.cache_dir = resolve_cache_dir(o.cache_dir.empty() ? std::nullopt : std::optional(o.cache_dir), ctx.cfg);
            ctx.json_only = o.json;
            ctx.out = &std::cout;
            ctx.err = &std::cerr;
            if (name == "params") return app::cmd_params(ctx);
            if (name == "angular") return app::cmd_angular(ctx);
            if (name == "peak") return app::cmd_peak(ctx);
            if (name == "fig3") return app::cmd_fig3(ctx);
            if (name == "classify") return app::cmd_classify(ctx);
            return app::cmd_sweep(ctx);
        },
        std::cerr);
}

int run_validate(const Options& o)
{
    return app::guarded(
        [&] {
            const RunConfig cfg = build_config(o);
            const auto cache = resolve_cache_dir(o.cache_dir.empty() ? std::nullopt : std::optional(o.cache_dir), cfg);
            std::filesystem::create_directories(cache);
            acceptance::Options opt;
            opt.data_dir = o.data_dir;
            opt.only = o.only;
            const auto results = acceptance::run_all(opt, o.json ? nullptr : &std::cerr);
            nlohmann::json summary = {{"passed", true}, {"failed", nlohmann::json::array()}, {"checks", nlohmann::json::array()}};
            for (const auto& r : results) {
                summary["checks"].push_back(
                    {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
                if (!r.passed) {
                    summary["passed"] = false;
                    summary["failed"].push_back(std::to_string(r.id) + ":" + r.name);
                }
            }
            std::cout << summary.dump(2) << '\n';
            return summary["passed"].get<bool>() ? app::exit_ok : app::exit_validation;
        },
        std::cerr);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Electron-pair emission from a superconducting tip"};
    cli.set_version_flag("--version", std::string(scpair::code_version));
    cli.require_subcommand(1);
    cli.fallthrough();
    Options o;
    cli.add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
    cli.add_option("--set", o.settings, "override one configuration key (key=value), repeatable");
    cli.add_option("--cache-dir", o.cache_dir, "row cache directory (overrides SCPAIR_CACHE_DIR and the config file)");
    cli.add_flag("--no-cache", o.no_cache, "compute every row, read and write no cache");
    cli.add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
    cli.add_option("--output-dir", o.output_dir, "directory for dataset files");
    cli.add_flag("--json", o.json, "print JSON only");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"params", "print derived parameters and regime flags"},
        {"angular", "Q(theta) datasets for the normal and superconducting emitter"},
        {"peak", "bunching-peak report at theta = pi, with fluctuation average"},
        {"fig3", "four peak-height panels with threshold crossings"},
        {"classify", "Werner decomposition at one detector geometry"},
        {"sweep", "peak height along one configured parameter grid"},
    };
    for (const auto& [name, help] : commands)
        cli.add_subcommand(name, help);
    auto* val = cli.add_subcommand("validate", "run the acceptance suite");
    val->add_option("--data-dir", o.data_dir, "directory with the reference tables");
    val->add_option("--only", o.only, "criterion numbers to run")->check(CLI::Range(1, scpair::acceptance::criterion_count));

    try {
        cli.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return scpair::app::exit_usage;
    }
    const std::string name = cli.get_subcommands().front()->get_name();
    return name == "validate" ? run_validate(o) : run_command(name, o);
}
