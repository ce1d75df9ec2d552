#include "scpair/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "scpair/errors.hpp"

namespace scpair::specfun {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double euler_gamma = std::numbers::egamma;
constexpr cplx I{0.0, 1.0};

// Generalized Gauss-Laguerre rule (weight t^alpha e^-t) by Golub-Welsch.
struct LaguerreRule {
    std::vector<double> nodes, weights;
};

LaguerreRule make_laguerre(int n, double alpha)
{
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        jac(i, i) = 2.0 * i + alpha + 1.0;
        if (i + 1 < n) {
            const double b = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
            jac(i, i + 1) = b;
            jac(i + 1, i) = b;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    LaguerreRule r;
    const double mu0 = std::tgamma(alpha + 1.0);
    for (int i = 0; i < n; ++i) {
        r.nodes.push_back(es.eigenvalues()(i));
        const double v = es.eigenvectors()(0, i);
        r.weights.push_back(mu0 * v * v);
    }
    return r;
}

constexpr int fine_order = 60;
constexpr int coarse_order = 40;

// Rules for alpha = order - 1/2, order in {0, 1}; built once, read-only afterwards.
const LaguerreRule& rule(int order, bool fine)
{
    static const std::array<LaguerreRule, 4> rules = {
        make_laguerre(fine_order, -0.5), make_laguerre(coarse_order, -0.5),
        make_laguerre(fine_order, 0.5), make_laguerre(coarse_order, 0.5)};
    return rules[2 * order + (fine ? 0 : 1)];
}

// Omega = (1/Gamma(nu+1/2)) int_0^inf e^-u u^(nu-1/2) (1 + s i u/(2z))^(nu-1/2) du,
// so that H^(1,2)_nu(z) = sqrt(2/(pi z)) e^{s i (z - nu pi/2 - pi/4)} Omega with s = +1, -1.
// For Re z >= 0 the branch point u* = 2 s i z sits above (s = +1) or below
// (s = -1) the real ray.  When it comes within pi/4 of the ray the ray is
// rotated by pi/8 so that u* stays on that same side; this keeps the integral
// on the principal sheet up to and including the imaginary axis.
cplx laplace_sum(const LaguerreRule& r, int order, double s, cplx z)
{
    const double alpha = order - 0.5;
    const cplx ustar = 2.0 * s * I * z;
    const double phi = std::abs(std::arg(ustar)) < pi / 4.0 ? -s * pi / 8.0 : 0.0;
    const double tphi = std::tan(phi);
    const cplx c{1.0, tphi};
    const cplx cpow = std::pow(c, alpha + 1.0);
    const cplx k = s * I / (2.0 * z);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double t = r.nodes[i];
        const cplx base = 1.0 + k * (t * c);
        const cplx f = order == 0 ? 1.0 / std::sqrt(base) : std::sqrt(base);
        sum += r.weights[i] * std::exp(cplx(0.0, -t * tphi)) * f;
    }
    const double gamma_norm = order == 0 ? std::sqrt(pi) : std::sqrt(pi) / 2.0;
    return sum * cpow / gamma_norm;
}

SpecfunResult laplace_hankel(int order, double s, cplx z)
{
    const cplx fine = laplace_sum(rule(order, true), order, s, z);
    const cplx coarse = laplace_sum(rule(order, false), order, s, z);
    const cplx pref = std::sqrt(2.0 / (pi * z)) * std::exp(s * I * (z - order * pi / 2.0 - pi / 4.0));
    const double rel = std::abs(fine - coarse) / std::abs(fine) + 4.0 * eps;
    return {pref * fine, rel};
}

// Combination of two results with relative errors ea, eb.
SpecfunResult combine(cplx value, cplx a, double ea, cplx b, double eb)
{
    const double absval = std::abs(value);
    const double err = absval > 0.0 ? (std::abs(a) * ea + std::abs(b) * eb) / absval + eps
                                    : std::numeric_limits<double>::infinity();
    return {value, err};
}

void check_order(int order)
{
    if (order != 0 && order != 1)
        throw ParameterError("only orders 0 and 1 are implemented");
}

} // namespace

cplx principal_sqrt(cplx z) { return std::sqrt(z); }

Cylinder series_path(int order, cplx z)
{
    check_order(order);
    if (z == cplx(0.0))
        throw ParameterError("Y and H have a logarithmic singularity at z = 0");
    const cplx q = -z * z / 4.0;
    // term_k = q^k / (k! (k+order)!)
    cplx term = 1.0;
    cplx jsum = 0.0, psum = 0.0;
    double jabs = 0.0, pabs = 0.0;
    double harmonic = 0.0; // H_k
    const int kmax = 400;
    for (int k = 0; k < kmax; ++k) {
        if (k > 0) {
            term *= q / (double(k) * double(k + order));
            harmonic += 1.0 / k;
        }
        // psi(k+1) [+ psi(k+2) for order 1]
        double psi = -euler_gamma + harmonic;
        if (order == 1)
            psi += -euler_gamma + harmonic + 1.0 / (k + 1.0);
        jsum += term;
        psum += psi * term;
        jabs += std::abs(term);
        pabs += std::abs(psi * term);
        if (k > 2 && std::abs(term) * (1.0 + std::abs(psi)) < 1e-18 * (std::abs(jsum) + std::abs(psum))
            && double(k) > std::abs(z))
            break;
    }
    const cplx lg = std::log(z / 2.0);
    Cylinder out;
    cplx j, y;
    double jerr, yabs;
    if (order == 0) {
        j = jsum;
        y = (2.0 / pi) * lg * j - (2.0 / pi) * psum;
        jerr = jabs;
        yabs = (2.0 / pi) * (std::abs(lg) * jabs + pabs);
    } else {
        j = (z / 2.0) * jsum;
        y = -2.0 / (pi * z) + (2.0 / pi) * lg * j - (z / (2.0 * pi)) * psum;
        jerr = std::abs(z / 2.0) * jabs;
        yabs = 2.0 / (pi * std::abs(z)) + (2.0 / pi) * std::abs(lg) * jerr + std::abs(z) / (2.0 * pi) * pabs;
    }
    const double cj = 8.0 * eps * jerr / std::abs(j) + eps;
    const double cy = 8.0 * eps * yabs / std::abs(y) + eps;
    out.j = {j, cj};
    out.y = {y, cy};
    const cplx h1 = j + I * y, h2 = j - I * y;
    out.h1 = {h1, 8.0 * eps * (jerr + yabs) / std::abs(h1) + eps};
    out.h2 = {h2, 8.0 * eps * (jerr + yabs) / std::abs(h2) + eps};
    return out;
}

Cylinder integral_path(int order, cplx z)
{
    check_order(order);
    if (std::abs(z) < 1.0)
        throw ParameterError("integral path requires |z| >= 1");
    Cylinder out;
    if (z.real() >= 0.0) {
        out.h1 = laplace_hankel(order, 1.0, z);
        out.h2 = laplace_hankel(order, -1.0, z);
    } else {
        // Continuation from zeta = -z in the right half plane; the sign of
        // Im z decides which side of the cut.
        const cplx zeta = -z;
        const SpecfunResult a = laplace_hankel(order, 1.0, zeta);
        const SpecfunResult b = laplace_hankel(order, -1.0, zeta);
        const double sgn = order == 0 ? 1.0 : -1.0; // (-1)^order
        if (!std::signbit(z.imag())) {
            out.h1 = {-sgn * b.value, b.est_error};
            const cplx v = sgn * (a.value + 2.0 * b.value);
            out.h2 = combine(v, a.value, a.est_error, 2.0 * b.value, b.est_error);
        } else {
            out.h2 = {-sgn * a.value, a.est_error};
            const cplx v = sgn * (2.0 * a.value + b.value);
            out.h1 = combine(v, 2.0 * a.value, a.est_error, b.value, b.est_error);
        }
    }
    const cplx j = 0.5 * (out.h1.value + out.h2.value);
    const cplx y = (out.h1.value - out.h2.value) / (2.0 * I);
    out.j = combine(j, out.h1.value / 2.0, out.h1.est_error, out.h2.value / 2.0, out.h2.est_error);
    out.y = combine(y, out.h1.value / 2.0, out.h1.est_error, out.h2.value / 2.0, out.h2.est_error);
    return out;
}

Cylinder cylinder(int order, cplx z)
{
    if (std::abs(z) > switch_radius)
        return integral_path(order, z);
    Cylinder out = series_path(order, z);
    // Inside the series disc the Hankel function that decays exponentially
    // would be a cancellation of two large terms; take it from the integral.
    if (std::abs(z) >= 1.0 && z.imag() != 0.0) {
        const Cylinder alt = integral_path(order, z);
        if (z.imag() < 0.0)
            out.h2 = alt.h2;
        else
            out.h1 = alt.h1;
    }
    return out;
}

SpecfunResult bessel_j0(cplx z)
{
    if (z == cplx(0.0))
        return {1.0, 0.0};
    return cylinder(0, z).j;
}
SpecfunResult bessel_y0(cplx z) { return cylinder(0, z).y; }
SpecfunResult bessel_j1(cplx z)
{
    if (z == cplx(0.0))
        return {0.0, 0.0};
    return cylinder(1, z).j;
}
SpecfunResult bessel_y1(cplx z) { return cylinder(1, z).y; }
SpecfunResult hankel1_0(cplx z) { return cylinder(0, z).h1; }
SpecfunResult hankel2_0(cplx z) { return cylinder(0, z).h2; }

SpecfunResult bessel_k1_result(double x)
{
    if (!(x > 0.0))
        throw ParameterError("K1 requires a positive argument");
    if (x < 1.0) {
        // K1 = 1/x + ln(x/2) I1(x) - (x/4) sum (psi(k+1)+psi(k+2)) (x^2/4)^k / (k!(k+1)!)
        const double q = x * x / 4.0;
        double term = 1.0, i1 = 0.0, s = 0.0, harmonic = 0.0, sabs = 0.0;
        for (int k = 0; k < 60; ++k) {
            if (k > 0) {
                term *= q / (double(k) * double(k + 1));
                harmonic += 1.0 / k;
            }
            const double psi = 2.0 * (-euler_gamma + harmonic) + 1.0 / (k + 1.0);
            i1 += term;
            s += psi * term;
            sabs += std::abs(psi * term);
            if (term < 1e-18 * i1)
                break;
        }
        i1 *= x / 2.0;
        const double lg = std::log(x / 2.0);
        const double v = 1.0 / x + lg * i1 - (x / 4.0) * s;
        const double mag = 1.0 / x + std::abs(lg * i1) + (x / 4.0) * sabs;
        return {v, 4.0 * eps * mag / v};
    }
    // sqrt(pi/(2x)) e^-x / Gamma(3/2) int e^-u u^(1/2) (1 + u/(2x))^(1/2) du
    auto omega = [x](const LaguerreRule& r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            sum += r.weights[i] * std::sqrt(1.0 + r.nodes[i] / (2.0 * x));
        return sum / (std::sqrt(pi) / 2.0);
    };
    const double fine = omega(rule(1, true));
    const double coarse = omega(rule(1, false));
    const double v = std::sqrt(pi / (2.0 * x)) * std::exp(-x) * fine;
    return {v, std::abs(fine - coarse) / fine + 4.0 * eps};
}

double bessel_k1(double x) { return bessel_k1_result(x).value.real(); }

} // namespace scpair::specfun
