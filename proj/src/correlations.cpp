#include "scpair/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "scpair/errors.hpp"

namespace scpair {
namespace {

using cplx = std::complex<double>;
constexpr double pi = units::pi;
constexpr double m = units::mass;
constexpr cplx I{0.0, 1.0};
// (2 pi)^-6 from the two Gaussian form factors.
const double g2_norm = std::pow(2.0 * pi, -6.0);

// 4 pi e^e sinh(c)/c: closed-form angular integral of exp(c cos) over the
// sphere, written so that neither factor overflows on its own.
cplx sphere_kernel(cplx e, cplx c)
{
    if (c.real() < 0.0)
        c = -c;
    if (std::abs(c) < 1e-3) {
        const cplx c2 = c * c;
        return 4.0 * pi * std::exp(e) * (1.0 + c2 / 6.0 + c2 * c2 / 120.0);
    }
    return 4.0 * pi * (std::exp(e + c) - std::exp(e - c)) / (2.0 * c);
}

// Angular integral over k-hat of g(a r1hat - k) g(b r2hat + k) without the
// (2 pi)^-6 normalisation; a and b may be complex.
cplx pair_gaussian(cplx a, cplx b, double k, double cos_theta, double w)
{
    const double w2 = w * w;
    const cplx e = -0.5 * w2 * (a * a + b * b + 2.0 * k * k);
    const cplx c = w2 * k * std::sqrt(a * a + b * b - 2.0 * a * b * cos_theta);
    return sphere_kernel(e, c);
}

double length_kf(const Eigen::Vector3d& r) { return units::to_kf(r.norm()); }

void check_geometry(const DetectorGeometry& g)
{
    if (!(g.r1.norm() > 0.0) || !(g.r2.norm() > 0.0) || !g.r1.allFinite() || !g.r2.allFinite())
        throw ParameterError("detector positions must be finite and non-zero");
}

} // namespace

DetectorGeometry DetectorGeometry::symmetric(double r, double theta)
{
    if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(theta))
        throw ParameterError("symmetric geometry needs r > 0 and finite theta");
    DetectorGeometry g;
    g.r1 = Eigen::Vector3d(0.0, 0.0, r);
    g.r2 = Eigen::Vector3d(r * std::sin(theta), 0.0, r * std::cos(theta));
    return g;
}

RegimeFlags regime_flags(const DetectorGeometry& g, const EmitterParams& p)
{
    return regime_flags(std::min(g.r1.norm(), g.r2.norm()), p);
}

cplx farfield_amplitude(const Eigen::Vector3d& k, const Eigen::Vector3d& r, double omega, const EmitterParams& params)
{
    validate(params);
    if (!(r.norm() > 0.0))
        throw ParameterError("far-field amplitude needs r != 0");
    const double pk = pole_momentum(omega);
    const double rk = length_kf(r);
    const Eigen::Vector3d p = pk * r.normalized();
    const FormFactors ff = form_factors(p, k, params);
    const double c = 2.0 * m * std::sqrt(pi / 2.0);
    return c * ff.t * std::exp(I * (pk * rk)) / rk;
}

double energy_cutoff(const EmitterParams& params, double multiplier)
{
    const double d = params.gap();
    double cut = std::min(units::mu, multiplier * std::max(params.ec, d));
    // keep omega_k = sqrt(eps^2 + |Delta|^2) <= 0.999 mu so the pole propagates
    const double omax = 0.999 * units::mu;
    cut = std::min(cut, std::sqrt(std::max(0.0, omax * omax - d * d)));
    if (!(cut > 0.0))
        throw ParameterError("gap too close to mu for a propagating window");
    return cut;
}

quad::QuadResult gamma(const DetectorGeometry& g, const EmitterParams& params, const CorrelationSpec& spec)
{
    validate(params);
    check_geometry(g);
    const double r1 = length_kf(g.r1), r2 = length_kf(g.r2);
    const double w = params.width(), w2 = w * w;
    const double sum_norm = (g.r1.normalized() + g.r2.normalized()).norm();
    const double c2 = 2.0 * pi * m * m; // C^2
    const double pref = m * c2 / (r1 * r2) * g2_norm / m;
    const std::complex<double> delta = params.delta;
    const double ec = params.ec;

    auto integrand = [=](double eps) -> cplx {
        const QuasiparticleState qp = bogoliubov(eps, delta);
        const double p = pole_momentum(qp.omega_k);
        const double k = std::sqrt(1.0 + eps);
        const double e = -w2 * (p * p + k * k) - qp.omega_k / ec;
        const double c = w2 * p * k * sum_norm;
        // m k |v|^2 C^2/(r1 r2) (p/m) e^{-omega/E_C} e^{i p (r1 - r2)} (2pi)^-6 kernel
        return pref * k * qp.vk2 * p * std::exp(I * (p * (r1 - r2))) * sphere_kernel(e, c);
    };

    const double cut = energy_cutoff(params, spec.cutoff_multiplier);
    const double d = params.gap();
    std::vector<double> breaks{0.0, d, -d, ec, -ec};
    quad::QuadSpec qs = spec.outer;
    quad::QuadResult res = quad::integrate_1d(integrand, -cut, cut, qs, breaks);
    // Bias of the truncation: edge values times the e^{-omega/E_C} decay length.
    res.err_est += (std::abs(integrand(-cut)) + std::abs(integrand(cut))) * ec;
    return res;
}

quad::QuadResult chi(const DetectorGeometry& g, const EmitterParams& params, const CorrelationSpec& spec)
{
    validate(params);
    check_geometry(g);
    const double d = params.gap();
    if (d == 0.0)
        return {}; // u_k v_k = 0 identically: no pair amplitude

    const double r1 = length_kf(g.r1), r2 = length_kf(g.r2);
    const double cos_theta = g.cos_theta();
    const double w = params.width();

    // Saddle of exp(i(sqrt(1-e) r1 + sqrt(1+e) r2)) in the inner energy e.
    const double rho = r2 / r1;
    const double es = (rho * rho - 1.0) / (rho * rho + 1.0);
    const double alpha = r1 / (8.0 * std::pow(1.0 - es, 1.5)) + r2 / (8.0 * std::pow(1.0 + es, 1.5));
    const double half = std::min(std::sqrt(40.0 / alpha), 0.95 - std::abs(es));
    if (!(half > 0.0))
        throw ParameterError("detector radii too asymmetric for the pair-amplitude contour");
    const cplx dir = std::polar(1.0, -pi / 4.0);

    // Outer window: the pair Gaussian damps |eps_k| beyond a few / w.
    const double window = std::min(std::sqrt(0.81 - d * d), 12.0 / w);
    const double umax = std::asinh(window / d);

    struct Outer {
        double u = std::numeric_limits<double>::quiet_NaN();
        double omega = 0.0, k = 0.0;
        cplx poles{0.0};
    };
    Outer cache;
    auto outer_at = [&](double u) -> const Outer& {
        if (u == cache.u)
            return cache;
        cache.u = u;
        const double eps = d * std::sinh(u);
        cache.omega = d * std::cosh(u);
        cache.k = std::sqrt(1.0 + eps);
        const double pk = std::sqrt(1.0 - cache.omega), qp = std::sqrt(1.0 + cache.omega);
        const double hpair = std::sqrt(pk * qp) / m;
        cplx poles = 0.0;
        if (cache.omega > es)
            poles += hpair * pair_gaussian(pk, qp, cache.k, cos_theta, w) * std::exp(I * (pk * r1 + qp * r2));
        if (-cache.omega < es)
            poles += hpair * pair_gaussian(qp, pk, cache.k, cos_theta, w) * std::exp(I * (qp * r1 + pk * r2));
        cache.poles = 2.0 * pi * poles;
        return cache;
    };

    auto integrand = [&](std::span<const double> x) -> cplx {
        const Outer& o = outer_at(x[0]);
        const cplx e2 = es + x[1] * dir;
        const cplx q = std::sqrt(1.0 - e2), p2 = std::sqrt(1.0 + e2);
        const cplx hpair = std::sqrt(q / m) * std::sqrt(p2 / m); // exponents cancel: e1 + e2 = 0
        const cplx line = hpair * pair_gaussian(q, p2, o.k, cos_theta, w) * std::exp(I * (q * r1 + p2 * r2))
                        * (2.0 * o.omega / ((o.omega - e2) * (o.omega + e2))) * dir;
        // the residue terms are spread uniformly over the inner interval
        return o.k * (o.poles / (2.0 * half) - I * line);
    };

    std::vector<double> ubreaks{0.0};
    if (std::abs(es) > d) {
        const double ub = std::acosh(std::abs(es) / d);
        ubreaks.push_back(-ub);
        ubreaks.push_back(ub);
    }
    std::array<quad::DomainFn, 2> domains = {
        [=](std::span<const double>) { return quad::Domain{-umax, umax, ubreaks}; },
        [=](std::span<const double> x) {
            const double omega = d * std::cosh(x[0]);
            quad::Domain dom{-half, half, {}};
            for (double pole : {omega, -omega}) {
                const double t = (pole - es) * std::cos(pi / 4.0);
                if (std::abs(t) < half)
                    dom.breaks.push_back(t);
            }
            return dom;
        }};

    const cplx phase = params.delta / d;
    const double pref = m * m / (r1 * r2) * g2_norm * m * (d / 2.0);
    quad::QuadResult res = quad::integrate_nested(integrand, domains, spec.outer);
    // Tail beyond the window, bounded from the residue terms at its edges.
    const double cw = w * w / 4.0;
    double edge = 0.0;
    for (double u : {-umax, umax}) {
        const Outer& o = outer_at(u);
        edge += std::abs(o.k * o.poles);
    }
    const double bias = edge / (2.0 * cw * window * window);
    res.value *= pref * phase;
    res.err_est = (res.err_est + bias) * pref;
    return res;
}

CorrelationResult assemble(double gamma11, double gamma22, cplx gamma21, cplx chi21)
{
    if (!(gamma11 > 0.0) || !(gamma22 > 0.0))
        throw UndefinedError("Q undefined: vanishing one-particle density");
    CorrelationResult r;
    r.gamma11 = gamma11;
    r.gamma22 = gamma22;
    r.gamma21 = gamma21;
    r.chi21 = chi21;
    r.rho1_1 = 2.0 * gamma11;
    r.rho1_2 = 2.0 * gamma22;
    r.rho2 = 4.0 * gamma22 * gamma11 - 2.0 * std::norm(gamma21) + 2.0 * std::norm(chi21);
    r.Q = r.rho2 / (r.rho1_2 * r.rho1_1);
    return r;
}

CorrelationResult rho2_and_Q(const DetectorGeometry& g, const EmitterParams& params, const CorrelationSpec& spec)
{
    const DetectorGeometry g11{g.r1, g.r1}, g22{g.r2, g.r2};
    const quad::QuadResult q11 = gamma(g11, params, spec);
    // gamma(r; r) depends on |r| only
    const quad::QuadResult q22 = g.r1.norm() == g.r2.norm() ? q11 : gamma(g22, params, spec);
    const quad::QuadResult q21 = gamma(g, params, spec);
    const quad::QuadResult qc = chi(g, params, spec);

    CorrelationResult r = assemble(q11.value.real(), q22.value.real(), q21.value, qc.value);
    const double drho2 = 4.0 * (r.gamma22 * q11.err_est + r.gamma11 * q22.err_est)
                       + 4.0 * std::abs(r.gamma21) * q21.err_est + 4.0 * std::abs(r.chi21) * qc.err_est;
    r.err_est = r.Q * (drho2 / r.rho2 + q11.err_est / r.gamma11 + q22.err_est / r.gamma22);
    r.evaluations = q11.evaluations + q22.evaluations + q21.evaluations + qc.evaluations;
    r.converged = q11.converged && q22.converged && q21.converged && qc.converged;
    r.regime = regime_flags(g, params);
    return r;
}

} // namespace scpair
