#include "scpair/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

#include "scpair/errors.hpp"

namespace scpair {

void validate(const FluctuationSpec& f)
{
    if (!(f.sigma_w >= 0.0) || !(f.sigma_r0 >= 0.0) || !std::isfinite(f.sigma_w) || !std::isfinite(f.sigma_r0))
        throw ParameterError("fluctuation widths must be finite and non-negative");
    if (f.samples < 1 || f.samples > 200)
        throw ParameterError("Gauss-Hermite order must be in [1, 200]");
}

GaussHermiteRule gauss_hermite(int n)
{
    if (n < 1)
        throw ParameterError("Gauss-Hermite order must be positive");
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        const double b = std::sqrt((i + 1.0) / 2.0);
        jac(i, i + 1) = b;
        jac(i + 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    GaussHermiteRule rule;
    const double mu0 = std::sqrt(units::pi);
    for (int i = 0; i < n; ++i) {
        const double v = es.eigenvectors()(0, i);
        rule.nodes.push_back(es.eigenvalues()(i));
        rule.weights.push_back(mu0 * v * v);
    }
    return rule;
}

double misalignment_envelope(double delta_theta, const EmitterParams& params)
{
    const double kw = units::k_fermi * params.width();
    const double s = std::sin(delta_theta / 4.0);
    return std::exp(-8.0 * kw * kw * s * s);
}

AveragedPeak averaged_peak(const EmitterParams& params, double r, const FluctuationSpec& fluct)
{
    validate(params);
    validate(fluct);
    AveragedPeak out;
    const PeakResult nominal = delta_q_peak(params, r);
    out.unperturbed = nominal.delta_q;
    out.peak = nominal;
    out.misalignment_tolerance = 1.0 / (units::k_fermi * params.width());
    out.interpretation =
        "tip displacement enters only through transverse misalignment delta_theta = |r0_perp|/r "
        "(interpretation); longitudinal displacement folds into r";

    const GaussHermiteRule gh = gauss_hermite(fluct.samples);
    const double inv_sqrt_pi = 1.0 / std::sqrt(units::pi);

    // <delta_Q(w)> with w ~ N(w0, sigma_w^2)
    double width_avg = nominal.delta_q;
    out.max_node_delta_q = nominal.delta_q;
    if (fluct.sigma_w > 0.0) {
        width_avg = 0.0;
        out.max_node_delta_q = 0.0;
        for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
            EmitterParams p = params;
            p.w = params.w + std::sqrt(2.0) * fluct.sigma_w * gh.nodes[i];
            if (!(p.w > 0.0))
                throw ParameterError("sigma_w puts a quadrature node at w <= 0");
            const double dq = delta_q_peak(p, r).delta_q;
            width_avg += gh.weights[i] * inv_sqrt_pi * dq;
            out.max_node_delta_q = std::max(out.max_node_delta_q, dq);
        }
    }

    // <envelope(|r0_perp|/r)> with r0_perp ~ N(0, sigma_r0^2 I_2)
    double env = 1.0;
    if (fluct.sigma_r0 > 0.0) {
        env = 0.0;
        for (std::size_t i = 0; i < gh.nodes.size(); ++i)
            for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
                const double x = std::sqrt(2.0) * fluct.sigma_r0 * gh.nodes[i];
                const double y = std::sqrt(2.0) * fluct.sigma_r0 * gh.nodes[j];
                const double dtheta = std::hypot(x, y) / r;
                env += gh.weights[i] * gh.weights[j] / units::pi * misalignment_envelope(dtheta, params);
            }
    }

    out.width_average = width_avg;
    out.envelope_factor = env;
    out.peak.delta_q = width_avg * env;
    out.peak.classification = classify(out.peak.delta_q / (1.0 + out.peak.delta_q));
    out.fractional_change = out.unperturbed > 0.0 ? (out.peak.delta_q - out.unperturbed) / out.unperturbed : 0.0;
    return out;
}

RoughnessBound roughness_bound(const EmitterParams& params)
{
    validate(params);
    RoughnessBound b;
    const double kw = units::k_fermi * params.width();
    b.tolerance_angle = 1.0 / kw;
    // 1/(k_F delta_theta) at delta_theta = 1/(k_F w) is w itself
    b.bound = units::to_lambda(1.0 / (units::k_fermi * b.tolerance_angle));
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "k_F w delta_theta <= 1 => delta_theta <= %.6g rad => roughness <= 1/(k_F delta_theta) = w = %.6g lambda_F",
                  b.tolerance_angle, b.bound);
    b.chain = buf;
    return b;
}

} // namespace scpair
