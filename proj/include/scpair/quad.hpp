#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace scpair::quad {

using cplx = std::complex<double>;

struct QuadSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_depth = 40;                     // bisection generations per initial panel
    std::optional<double> oscillation_hint; // wavenumber of the dominant oscillation
};

struct QuadResult {
    cplx value{0.0};
    double err_est = 0.0;
    long evaluations = 0;
    bool converged = true;
    int failed_dimension = -1; // innermost-first index of the first failing level
};

inline QuadSpec with_rel_tol(double rel_tol)
{
    QuadSpec s;
    s.rel_tol = rel_tol;
    return s;
}

using Integrand = std::function<cplx(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on [a, b].  `breaks` are interior
// points where the integrand is known to be non-smooth.  Panels are summed in
// left-to-right order, so results are bitwise reproducible.
QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadSpec& spec,
                        std::span<const double> breaks = {});

// [a, inf) through x = a + t/(1-t).
QuadResult integrate_semi_infinite(const Integrand& f, double a, const QuadSpec& spec);

// (-inf, inf) as the sum of two semi-infinite halves at `center`.
QuadResult integrate_real_line(const Integrand& f, const QuadSpec& spec, double center = 0.0);

// One level of a nested integral: its limits and breakpoints may depend on
// the already-fixed outer coordinates (outer-first order).
struct Domain {
    double lo, hi;
    std::vector<double> breaks;
};
using DomainFn = std::function<Domain(std::span<const double> outer)>;
using NestedIntegrand = std::function<cplx(std::span<const double> x)>;

inline constexpr int max_nested_dimension = 5;

// Iterated integral; domains[0] is the outermost variable.  Level d runs at
// rel_tol * 10^-d and abs_tol * 10^-d (inner levels one order tighter per
// level), halved on every level that has inner levels so that their
// propagated error fits in the budget.  Inner non-convergence is reported
// through failed_dimension (0 = outermost).
QuadResult integrate_nested(const NestedIntegrand& f, std::span<const DomainFn> domains, const QuadSpec& spec);

} // namespace scpair::quad
