#include "scpair/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "scpair/errors.hpp"

namespace scpair {

std::string_view to_string(Classification c)
{
    switch (c) {
    case Classification::separable: return "separable";
    case Classification::entangled: return "entangled";
    case Classification::bell_violating: return "bell_violating";
    }
    return "unknown";
}

Classification classify(double p)
{
    if (p > bell_p)
        return Classification::bell_violating;
    if (p > entanglement_p)
        return Classification::entangled;
    return Classification::separable;
}

WernerReport werner_from_weights(double a, double b)
{
    if (!(a >= 0.0) || !(b >= 0.0))
        throw ParameterError("Werner weights must be non-negative");
    if (!(4.0 * a + b > 0.0))
        throw UndefinedError("rho2 = 0: spin state undefined");
    WernerReport r;
    r.a = a;
    r.b = b;
    r.p = b / (4.0 * a + b);
    r.concurrence = std::max(0.0, (3.0 * r.p - 1.0) / 2.0);
    r.chsh = 2.0 * std::sqrt(2.0) * r.p;
    r.classification = classify(r.p);
    return r;
}

WernerReport werner_decompose(const CorrelationResult& corr)
{
    const double g21 = std::norm(corr.gamma21);
    // Cauchy-Schwarz makes a >= 0; clip rounding at the coincident point.
    const double a = std::max(0.0, corr.gamma22 * corr.gamma11 - g21);
    const double b = 2.0 * (g21 + std::norm(corr.chi21));
    return werner_from_weights(a, b);
}

double singlet_weight_from_q(double q)
{
    if (!(q > 0.0))
        throw UndefinedError("Q must be positive");
    return (q - 1.0) / q;
}

Eigen::Matrix4d werner_density(double a, double b)
{
    const WernerReport w = werner_from_weights(a, b);
    Eigen::Vector4d singlet(0.0, 1.0, -1.0, 0.0);
    singlet /= std::sqrt(2.0);
    Eigen::Matrix4d rho = a * Eigen::Matrix4d::Identity() + b * singlet * singlet.transpose();
    return rho / (4.0 * w.a + w.b);
}

} // namespace scpair
