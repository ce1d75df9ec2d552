#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "scpair/errors.hpp"
#include "scpair/model.hpp"

namespace scpair::oracle {
namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

} // namespace

double wootters_concurrence(const Eigen::Matrix4d& rho)
{
    Eigen::Matrix4d yy = Eigen::Matrix4d::Zero();
    yy(0, 3) = yy(3, 0) = -1.0; // sigma_y x sigma_y, real
    yy(1, 2) = yy(2, 1) = 1.0;
    const Eigen::Matrix4d tilde = yy * rho * yy; // rho real, so rho* = rho
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
    const Eigen::Matrix4d s = es.operatorSqrt();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> rs(s * tilde * s);
    Eigen::Vector4d l = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(l.data(), l.data() + 4, std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

quad::QuadResult farfield_integral(const Eigen::Vector3d& k, const Eigen::Vector3d& r, double omega,
                                   const EmitterParams& params, double rel_tol)
{
    const double w = params.width(), w2 = w * w;
    const Eigen::Vector3d rk = units::to_kf(1.0) * r;
    const double pk = std::sqrt(1.0 - omega); // eps_p + omega = p^2 - pk^2
    const double kk = k.squaredNorm();
    // int dOmega exp(p phat.v) with v = w^2 k + i r:  4 pi sinh(p s)/(p s),
    // s^2 = v.v.  Written with the Gaussian folded in to stay finite.
    const cplx s2 = w2 * w2 * kk - rk.squaredNorm() + 2.0 * I * w2 * k.dot(rk);
    cplx s = std::sqrt(s2);
    if (s.real() < 0.0)
        s = -s;
    const double norm = 1.0 / (8.0 * units::pi * units::pi * units::pi);
    auto F = [&](double p) -> cplx {
        // g(p - k) averaged over phat, times h(p) p^2 (2 pi)^{-3/2}
        const double gauss = -w2 * (p * p + kk) / 2.0;
        cplx ang;
        const cplx ps = p * s;
        if (std::abs(ps) < 1e-6)
            ang = 4.0 * units::pi * std::exp(gauss);
        else
            ang = 4.0 * units::pi * (std::exp(gauss + ps) - std::exp(gauss - ps)) / (2.0 * ps);
        const double h = std::sqrt(p / units::mass) * std::exp((p * p - 1.0) / (2.0 * params.ec));
        return std::pow(2.0 * units::pi, -1.5) * norm * h * p * p * ang;
    };
    auto G = [&](double p) { return F(p) / (p + pk); };
    const cplx gk = G(pk);
    quad::QuadSpec spec = quad::with_rel_tol(rel_tol);
    spec.oscillation_hint = rk.norm();
    // principal value on [0, 2 pk] by subtraction: the log term vanishes on a
    // symmetric interval
    auto near = [&](double p) -> cplx {
        const double d = p - pk;
        if (std::abs(d) < 1e-9 * pk)
            return (G(pk + 1e-6) - G(pk - 1e-6)) / 2e-6;
        return (G(p) - gk) / d;
    };
    const double mid[] = {pk};
    quad::QuadResult a = quad::integrate_1d(near, 0.0, 2.0 * pk, spec, mid);
    // tail: the Gaussian must beat the growth of h; stop once the log of the
    // integrand envelope is below -60
    const double curv = w2 / 2.0 - 1.0 / (2.0 * params.ec);
    if (!(curv > 0.0))
        throw ParameterError("far-field integral diverges: w^2 E_C too small");
    double hi = 2.0 * pk;
    while (-curv * hi * hi + w2 * std::sqrt(kk) * hi - w2 * kk / 2.0 > -60.0)
        hi += 0.25;
    quad::QuadResult b = quad::integrate_1d([&](double p) { return G(p) / (p - pk); }, 2.0 * pk, hi, spec);
    quad::QuadResult out;
    out.value = a.value + b.value + I * units::pi * gk;
    out.err_est = a.err_est + b.err_est;
    out.evaluations = a.evaluations + b.evaluations;
    out.converged = a.converged && b.converged;
    return out;
}

quad::QuadResult gamma_spherical(const DetectorGeometry& g, const EmitterParams& params, double rel_tol)
{
    const double cut = energy_cutoff(params);
    auto f = [&](std::span<const double> x) -> cplx {
        const double eps = x[0], ct = x[1], ph = x[2];
        const QuasiparticleState qp = bogoliubov(eps, params.delta);
        const double k = std::sqrt(1.0 + eps);
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const Eigen::Vector3d kv = k * Eigen::Vector3d(st * std::cos(ph), st * std::sin(ph), ct);
        const cplx a1 = farfield_amplitude(kv, g.r1, qp.omega_k, params);
        const cplx a2 = farfield_amplitude(kv, g.r2, qp.omega_k, params);
        // d^3k = k^2 dk dOmega, dk = d eps / (2k)
        return 0.5 * k * qp.vk2 * a1 * std::conj(a2);
    };
    const double c1 = g.r1.normalized().z(), c2 = g.r2.normalized().z();
    const double p1 = std::atan2(g.r1.y(), g.r1.x()), p2 = std::atan2(g.r2.y(), g.r2.x());
    std::vector<quad::DomainFn> doms = {
        [cut](std::span<const double>) { return quad::Domain{-cut, cut, {}}; },
        [c1, c2](std::span<const double>) {
            std::vector<double> b;
            for (double c : {c1, c2})
                if (c > -1.0 && c < 1.0)
                    b.push_back(c);
            std::sort(b.begin(), b.end());
            return quad::Domain{-1.0, 1.0, b};
        },
        [p1, p2](std::span<const double>) {
            std::vector<double> b;
            for (double p : {p1, p2}) {
                const double q = p < 0.0 ? p + 2.0 * units::pi : p;
                if (q > 0.0 && q < 2.0 * units::pi)
                    b.push_back(q);
            }
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
            return quad::Domain{0.0, 2.0 * units::pi, b};
        },
    };
    return quad::integrate_nested(f, doms, quad::with_rel_tol(rel_tol));
}

std::vector<GoldenPoint> load_specfun_golden(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open golden table " + file.string());
    std::vector<GoldenPoint> out;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        double zr, zi, fr, fi;
        std::string tag;
        if (!(ls >> zr >> zi >> fr >> fi >> tag))
            throw std::runtime_error("malformed golden table line " + std::to_string(n));
        out.push_back({{zr, zi}, {fr, fi}, tag});
    }
    return out;
}

PeakGolden load_peak_golden(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open golden table " + file.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        double d, ec, w, r, q;
        if (!(ls >> d >> ec >> w >> r >> q))
            throw std::runtime_error("malformed peak golden table");
        PeakGolden g;
        g.params.delta = d;
        g.params.ec = ec;
        g.params.w = w;
        g.r = r;
        g.delta_q = q;
        return g;
    }
    throw std::runtime_error("empty peak golden table");
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace scpair::oracle
