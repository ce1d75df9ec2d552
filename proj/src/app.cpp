#include "scpair/app.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "scpair/correlations.hpp"
#include "scpair/entanglement.hpp"
#include "scpair/io.hpp"
#include "scpair/parallel.hpp"
#include "scpair/peak.hpp"
#include "scpair/robustness.hpp"

namespace scpair::app {
namespace {

using nlohmann::json;

json regime_json(const RegimeFlags& f)
{
    return {{"far_field", f.far_field}, {"fraunhofer", f.fraunhofer}, {"filter", f.filter}, {"lambda_valid", f.lambda_valid}};
}

json metadata(const RunContext& ctx, const std::string& command)
{
    const RunConfig& c = ctx.cfg;
    return {
        {"command", command},
        {"code_version", std::string(code_version)},
        {"config_hash", config_hash(c)},
        {"config",
         {{"delta", c.delta}, {"delta_phase", c.delta_phase}, {"ec", c.ec}, {"w", c.w}, {"r", c.r},
          {"theta", c.theta}, {"theta_min", c.theta_min}, {"theta_max", c.theta_max}, {"theta_count", c.theta_count},
          {"sweep_param", c.sweep_param}, {"sweep_min", c.sweep_min}, {"sweep_max", c.sweep_max},
          {"sweep_count", c.sweep_count}, {"sweep_scale", c.sweep_scale}, {"fig3_points", c.fig3_points},
          {"rel_tol_outer", c.rel_tol}, {"rel_tol_inner", c.rel_tol / 10.0},
          {"cutoff_multiplier", c.cutoff_multiplier}, {"sigma_w", c.sigma_w}, {"sigma_r0", c.sigma_r0},
          {"gh_samples", c.gh_samples}}},
        {"units", "hbar = k_F = mu = 1; lengths in lambda_F, energies in mu"},
        {"regime_cutoffs",
         {{"k_F r", units::far_field_min}, {"mu / E_C", units::filter_min}, {"r / (k_F w^2)", units::fraunhofer_min}}},
        {"lambda", "Lambda = 1 (validity warning for w < lambda_F)"},
        {"threshold_lines", {{"entanglement_Q", 1.0 + entanglement_delta_q}, {"bell_Q", 1.0 + bell_delta_q}}},
    };
}

std::string flag(bool b) { return b ? "1" : "0"; }

double regime_bits(const RegimeFlags& f)
{
    return double(f.far_field) + 2.0 * f.fraunhofer + 4.0 * f.filter + 8.0 * f.lambda_valid;
}

RegimeFlags regime_from_bits(double v)
{
    const int b = static_cast<int>(v);
    RegimeFlags f;
    f.far_field = b & 1;
    f.fraunhofer = b & 2;
    f.filter = b & 4;
    f.lambda_valid = b & 8;
    return f;
}

io::RowCache make_cache(const RunContext& ctx)
{
    if (ctx.cache_dir.empty())
        return {};
    std::filesystem::create_directories(ctx.cache_dir);
    return io::RowCache(ctx.cache_dir, config_hash(ctx.cfg));
}

// Sweep rows through the cache: encode, look up, compute missing, store.
std::vector<SweepRow> sweep_rows(const RunContext& ctx, const SweepSpec& spec, const std::string& dataset)
{
    const io::RowCache cache = make_cache(ctx);
    constexpr std::size_t cols = 6;
    if (auto hit = cache.load(dataset, spec.grid.size(), cols)) {
        std::vector<SweepRow> rows;
        for (const auto& v : *hit) {
            SweepRow r;
            r.parameter = v[0];
            r.delta_q = v[1];
            r.q = v[2];
            r.err_est = v[3];
            r.regime = regime_from_bits(v[4]);
            r.classification = static_cast<Classification>(static_cast<int>(v[5]));
            rows.push_back(r);
        }
        return rows;
    }
    std::vector<SweepRow> rows =
        parallel_map(spec.grid.size(), ctx.cfg.threads, [&spec](std::size_t i) { return peak_row(spec, spec.grid[i]); });
    std::vector<std::vector<double>> enc;
    for (const SweepRow& r : rows)
        enc.push_back({r.parameter, r.delta_q, r.q, r.err_est, regime_bits(r.regime), double(static_cast<int>(r.classification))});
    cache.store(dataset, enc);
    return rows;
}

std::string sweep_csv(const RunContext& ctx, const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    const std::string hash = config_hash(ctx.cfg);
    std::ostringstream o;
    o << to_string(spec.parameter) << ",Q,delta_Q,err_est,far_field,fraunhofer,filter,lambda_valid,classification,config_hash,code_version\n";
    for (const SweepRow& r : rows)
        o << io::format_double(r.parameter) << ',' << io::format_double(r.q) << ',' << io::format_double(r.delta_q) << ','
          << io::format_double(r.err_est) << ',' << flag(r.regime.far_field) << ',' << flag(r.regime.fraunhofer) << ','
          << flag(r.regime.filter) << ',' << flag(r.regime.lambda_valid) << ',' << to_string(r.classification) << ','
          << hash << ',' << code_version << '\n';
    return o.str();
}

json crossings_json(const std::vector<ThresholdCrossing>& cs)
{
    json arr = json::array();
    for (const auto& c : cs)
        arr.push_back({{"parameter", c.parameter}, {"Q_threshold", c.q_threshold}, {"kind", c.kind},
                       {"direction", c.rising ? "rising" : "falling"}});
    return arr;
}

void write_dataset(const std::filesystem::path& path, const std::string& csv, json meta)
{
    io::atomic_write(path, csv);
    io::atomic_write(path.string() + ".json", meta.dump(2) + "\n");
}

void warn_regime(const RunContext& ctx, const RegimeFlags& f)
{
    if (!f.far_field)
        *ctx.err << "warning: k_F r < 50, outside the far-field regime\n";
    if (!f.fraunhofer)
        *ctx.err << "warning: r / (k_F w^2) < 10, outside the Fraunhofer regime\n";
    if (!f.filter)
        *ctx.err << "warning: mu / E_C < 20, energy filter not sharp\n";
    if (!f.lambda_valid)
        *ctx.err << "warning: w < lambda_F, Lambda = 1 is not justified\n";
}

CorrelationSpec correlation_spec(const RunConfig& c)
{
    CorrelationSpec s;
    s.outer = quad::with_rel_tol(c.rel_tol);
    s.cutoff_multiplier = c.cutoff_multiplier;
    return s;
}

json correlation_json(const CorrelationResult& r)
{
    return {{"gamma11", r.gamma11}, {"gamma22", r.gamma22},
            {"gamma21", {r.gamma21.real(), r.gamma21.imag()}}, {"chi21", {r.chi21.real(), r.chi21.imag()}},
            {"rho1_1", r.rho1_1}, {"rho1_2", r.rho1_2}, {"rho2", r.rho2}, {"Q", r.Q}, {"err_est", r.err_est},
            {"evaluations", r.evaluations}, {"converged", r.converged}, {"regime", regime_json(r.regime)}};
}

} // namespace

int guarded(const std::function<int()>& body, std::ostream& err)
{
    try {
        return body();
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const UndefinedError& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const OutOfBandError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int cmd_params(const RunContext& ctx)
{
    const EmitterParams p = ctx.cfg.emitter();
    const DerivedParams d = derive_params(p);
    const RegimeFlags f = regime_flags(ctx.cfg.r, p);
    json j = metadata(ctx, "params");
    j["derived"] = {{"xi_lambda", d.xi}, {"xi_kf", d.xi_kf}, {"lambda_F", d.lambda_f}, {"w_over_xi", d.w_over_xi},
                    {"delta_over_ec", d.delta_over_ec},
                    {"kF_xi2_lambda", units::to_lambda(d.xi_kf * d.xi_kf * units::k_fermi)},
                    {"energy_cutoff", energy_cutoff(p, ctx.cfg.cutoff_multiplier)}};
    j["regime"] = regime_json(f);
    if (!ctx.json_only) {
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "xi            = %.6g lambda_F (%.6g / k_F)\n|Delta|/E_C   = %.6g\nw/xi          = %.6g\n"
                      "k_F xi^2      = %.6g lambda_F\nE_cut         = %.6g mu\n",
                      d.xi, d.xi_kf, d.delta_over_ec, d.w_over_xi, units::to_lambda(d.xi_kf * d.xi_kf), energy_cutoff(p, ctx.cfg.cutoff_multiplier));
        *ctx.out << buf;
        *ctx.out << "regime        : far_field=" << f.far_field << " fraunhofer=" << f.fraunhofer
                 << " filter=" << f.filter << " lambda_valid=" << f.lambda_valid << '\n';
    }
    *ctx.out << j.dump(2) << '\n';
    return exit_ok;
}

int cmd_angular(const RunContext& ctx)
{
    const RunConfig& c = ctx.cfg;
    const std::vector<double> thetas = make_grid(c.theta_min, c.theta_max, c.theta_count, false);
    EmitterParams sc = c.emitter(), normal = c.emitter();
    normal.delta = 0.0;
    const CorrelationSpec spec = correlation_spec(c);
    warn_regime(ctx, regime_flags(c.r, sc));

    const io::RowCache cache = make_cache(ctx);
    std::vector<std::vector<double>> rows;
    if (auto hit = cache.load("angular", thetas.size(), 5)) {
        rows = *hit;
    } else {
        rows = parallel_map(thetas.size(), c.threads, [&](std::size_t i) {
            const DetectorGeometry g = DetectorGeometry::symmetric(c.r, thetas[i]);
            const CorrelationResult n = rho2_and_Q(g, normal, spec);
            const CorrelationResult s = rho2_and_Q(g, sc, spec);
            if (!n.converged || !s.converged) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "quadrature did not converge at theta = %.6g", thetas[i]);
                throw ConvergenceError(buf);
            }
            return std::vector<double>{thetas[i], n.Q, n.err_est, s.Q, s.err_est};
        });
        cache.store("angular", rows);
    }

    const std::string hash = config_hash(c);
    std::filesystem::path dir = c.output_dir;
    for (int which = 0; which < 2; ++which) {
        std::ostringstream o;
        o << "theta_rad,Q,err_est,config_hash,code_version\n";
        for (const auto& r : rows)
            o << io::format_double(r[0]) << ',' << io::format_double(r[1 + 2 * which]) << ','
              << io::format_double(r[2 + 2 * which]) << ',' << hash << ',' << code_version << '\n';
        json meta = metadata(ctx, "angular");
        meta["dataset"] = which == 0 ? "normal (Delta = 0)" : "superconducting";
        meta["columns"] = {"theta_rad", "Q", "err_est", "config_hash", "code_version"};
        meta["defaults_note"] = "default parameters are reconstructed values; compare shapes, not points";
        const std::string name = which == 0 ? "angular_normal.csv" : "angular_superconducting.csv";
        write_dataset(dir / name, o.str(), meta);
        if (!ctx.json_only)
            *ctx.out << "wrote " << (dir / name).string() << '\n';
    }
    return exit_ok;
}

int cmd_peak(const RunContext& ctx)
{
    const RunConfig& c = ctx.cfg;
    const EmitterParams p = c.emitter();
    const PeakResult pk = delta_q_peak(p, c.r);
    const PeakEnvelope env = peak_envelope(p, c.r);
    const AveragedPeak avg = averaged_peak(p, c.r, c.fluctuations());
    const RoughnessBound rb = roughness_bound(p);
    warn_regime(ctx, pk.regime);
    json j = metadata(ctx, "peak");
    j["peak"] = {{"delta_Q", pk.delta_q}, {"Q", 1.0 + pk.delta_q}, {"est_error", pk.est_error},
                 {"hankel_arg", {pk.hankel_arg.real(), pk.hankel_arg.imag()}}, {"regime", regime_json(pk.regime)},
                 {"classification", to_string(pk.classification)},
                 {"envelope", {{"upper", env.upper}, {"lower", env.lower}}}};
    j["averaged"] = {{"delta_Q", avg.peak.delta_q}, {"fractional_change", avg.fractional_change},
                     {"width_average", avg.width_average}, {"envelope_factor", avg.envelope_factor},
                     {"misalignment_tolerance_rad", avg.misalignment_tolerance},
                     {"interpretation", avg.interpretation}, {"interpretation_flag", true}};
    j["roughness"] = {{"bound_lambda", rb.bound}, {"tolerance_angle", rb.tolerance_angle}, {"chain", rb.chain}};
    if (!ctx.json_only) {
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "delta_Q        = %.10g\nQ              = %.10g\nhankel arg     = %.6g %+.6gi\n"
                      "classification = %s\naveraged dQ    = %.10g (change %.3g)\n",
                      pk.delta_q, 1.0 + pk.delta_q, pk.hankel_arg.real(), pk.hankel_arg.imag(),
                      std::string(to_string(pk.classification)).c_str(), avg.peak.delta_q, avg.fractional_change);
        *ctx.out << buf << "roughness      : " << rb.chain << '\n';
    }
    *ctx.out << j.dump(2) << '\n';
    return exit_ok;
}

SweepSpec fig3_panel(const RunConfig& cfg, SweepParameter which)
{
    SweepSpec s;
    s.parameter = which;
    s.base = cfg.emitter();
    s.r = cfg.r;
    const int n = cfg.fig3_points;
    switch (which) {
    case SweepParameter::delta: s.grid = make_grid(1e-4, 1e-2, n, true); break;
    case SweepParameter::ec: s.grid = make_grid(5e-4, 5e-2, n, true); break;
    case SweepParameter::w: s.grid = make_grid(1.0, 10.0, n, false); break;
    case SweepParameter::r: s.grid = make_grid(10.0, 1e7, n, true); break;
    }
    return s;
}

int cmd_fig3(const RunContext& ctx)
{
    const RunConfig& c = ctx.cfg;
    std::filesystem::path dir = c.output_dir;
    std::ostringstream th;
    th << "panel,parameter,Q_threshold,kind,direction\n";
    for (SweepParameter which : {SweepParameter::delta, SweepParameter::ec, SweepParameter::w, SweepParameter::r}) {
        const SweepSpec spec = fig3_panel(c, which);
        const std::string name = "fig3_" + std::string(to_string(which));
        const std::vector<SweepRow> rows = sweep_rows(ctx, spec, name);
        const std::vector<ThresholdCrossing> cs = locate_crossings(spec, rows);
        for (const auto& x : cs)
            th << to_string(which) << ',' << io::format_double(x.parameter) << ',' << io::format_double(x.q_threshold)
               << ',' << x.kind << ',' << (x.rising ? "rising" : "falling") << '\n';
        json meta = metadata(ctx, "fig3");
        meta["panel"] = to_string(which);
        meta["crossings"] = crossings_json(cs);
        meta["columns"] = {std::string(to_string(which)), "Q", "delta_Q", "err_est", "far_field", "fraunhofer",
                           "filter", "lambda_valid", "classification", "config_hash", "code_version"};
        write_dataset(dir / (name + ".csv"), sweep_csv(ctx, spec, rows), meta);
        if (!ctx.json_only)
            *ctx.out << "wrote " << (dir / (name + ".csv")).string() << " (" << cs.size() << " threshold crossings)\n";
    }
    io::atomic_write(dir / "fig3_thresholds.csv", th.str());
    return exit_ok;
}

int cmd_sweep(const RunContext& ctx)
{
    const SweepSpec spec = ctx.cfg.sweep_spec();
    const std::string name = "sweep_" + std::string(to_string(spec.parameter));
    const std::vector<SweepRow> rows = sweep_rows(ctx, spec, name);
    const std::vector<ThresholdCrossing> cs = locate_crossings(spec, rows);
    json meta = metadata(ctx, "sweep");
    meta["crossings"] = crossings_json(cs);
    const std::filesystem::path path = std::filesystem::path(ctx.cfg.output_dir) / (name + ".csv");
    write_dataset(path, sweep_csv(ctx, spec, rows), meta);
    if (!ctx.json_only)
        *ctx.out << "wrote " << path.string() << " (" << rows.size() << " rows, " << cs.size() << " threshold crossings)\n";
    return exit_ok;
}

int cmd_classify(const RunContext& ctx)
{
    const RunConfig& c = ctx.cfg;
    const EmitterParams p = c.emitter();
    const DetectorGeometry g = DetectorGeometry::symmetric(c.r, c.theta);
    const CorrelationResult r = rho2_and_Q(g, p, correlation_spec(c));
    warn_regime(ctx, r.regime);
    if (!r.converged)
        throw ConvergenceError("quadrature did not converge for the requested geometry");
    const WernerReport wr = werner_decompose(r);
    json j = metadata(ctx, "classify");
    j["correlations"] = correlation_json(r);
    j["werner"] = {{"a", wr.a}, {"b", wr.b}, {"p", wr.p}, {"concurrence", wr.concurrence}, {"chsh", wr.chsh},
                   {"classification", to_string(wr.classification)}};
    if (!ctx.json_only) {
        char buf[768];
        std::snprintf(buf, sizeof buf,
                      "gamma11 = %.10e\ngamma22 = %.10e\ngamma21 = %.10e %+.10ei\nchi21   = %.10e %+.10ei\n"
                      "rho2    = %.10e\nQ       = %.10g (err %.2g)\n"
                      "p       = %.10g\nconcurrence = %.10g\nCHSH    = %.10g\nclassification = %s\n",
                      r.gamma11, r.gamma22, r.gamma21.real(), r.gamma21.imag(), r.chi21.real(), r.chi21.imag(), r.rho2,
                      r.Q, r.err_est, wr.p, wr.concurrence, wr.chsh, std::string(to_string(wr.classification)).c_str());
        *ctx.out << buf;
    }
    *ctx.out << j.dump(2) << '\n';
    return exit_ok;
}

} // namespace scpair::app
