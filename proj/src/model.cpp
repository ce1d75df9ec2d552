#include "scpair/model.hpp"

#include <limits>
#include <string>

#include "scpair/errors.hpp"

namespace scpair {

void validate(const EmitterParams& p)
{
    const double d = std::abs(p.delta);
    if (!std::isfinite(d) || !std::isfinite(p.ec) || !std::isfinite(p.w))
        throw ParameterError("emitter parameters must be finite");
    if (p.ec <= 0.0)
        throw ParameterError("E_C must be positive, got " + std::to_string(p.ec));
    if (p.w <= 0.0)
        throw ParameterError("w must be positive, got " + std::to_string(p.w));
    if (d >= units::mu)
        throw ParameterError("|Delta| must stay below mu (weak coupling)");
}

DerivedParams derive_params(const EmitterParams& p)
{
    validate(p);
    const double d = p.gap();
    DerivedParams out{};
    out.lambda_f = units::lambda_fermi;
    out.xi_kf = d > 0.0 ? units::k_fermi / (units::pi * units::mass * d)
                        : std::numeric_limits<double>::infinity();
    out.xi = out.xi_kf / units::lambda_fermi;
    out.w_over_xi = p.w / out.xi;
    out.delta_over_ec = d / p.ec;
    return out;
}

QuasiparticleState bogoliubov(double eps_k, std::complex<double> delta)
{
    QuasiparticleState s{};
    s.eps_k = eps_k;
    s.omega_k = std::hypot(eps_k, std::abs(delta));
    if (s.omega_k == 0.0) {
        // Delta = 0 exactly at the Fermi surface: step of v^2 taken at 1/2.
        s.ukvk = 0.0;
        s.vk2 = 0.5;
        return s;
    }
    s.ukvk = delta / (2.0 * s.omega_k);
    s.vk2 = 0.5 * (1.0 - eps_k / s.omega_k);
    return s;
}

FormFactors form_factors(const Eigen::Vector3d& p, const Eigen::Vector3d& k, const EmitterParams& params)
{
    FormFactors f{};
    f.g = gaussian_factor((p - k).squaredNorm(), params.width());
    f.h = tunneling_factor(p.norm(), params.ec);
    f.t = f.h * f.g;
    return f;
}

double pole_momentum(double omega)
{
    if (!(omega < units::mu))
        throw OutOfBandError("no propagating pole for omega >= mu (omega = " + std::to_string(omega) + ")");
    if (omega < 0.0)
        throw ParameterError("quasiparticle energy must be non-negative");
    return std::sqrt(2.0 * units::mass * (units::mu - omega));
}

} // namespace scpair
